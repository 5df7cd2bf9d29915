//! Acceptance gate: one test per release criterion. Each test prints a
//! single `[PASS]`/`[FAIL]` line with its runtime (visible under
//! `--nocapture`, or on failure) and asserts both correctness and, where a
//! budget applies, the time limit.

use std::time::{Duration, Instant};

use k3walls::checks::{self, CheckOutcome};

/// Seed for the randomized portions; fixed so the gate is reproducible.
const SEED: u64 = 0x5EED_0001;

fn gate(criterion: &str, limit: Option<Duration>, outcomes: &[CheckOutcome], elapsed: Duration) {
    let failures: Vec<&CheckOutcome> = outcomes.iter().filter(|o| !o.passed).collect();
    let within = limit.map_or(true, |l| elapsed <= l);
    let status = if failures.is_empty() && within {
        "[PASS]"
    } else {
        "[FAIL]"
    };
    let budget = limit
        .map(|l| format!(", limit {}s", l.as_secs()))
        .unwrap_or_default();
    println!(
        "{status} {criterion}: {} checks in {:.2}s{budget}",
        outcomes.len(),
        elapsed.as_secs_f64()
    );
    for f in &failures {
        println!("       failed {}: {}", f.name, f.detail);
    }
    assert!(
        failures.is_empty(),
        "{criterion}: {} of {} checks failed",
        failures.len(),
        outcomes.len()
    );
    assert!(
        within,
        "{criterion}: took {:.2}s, over the {}s budget",
        elapsed.as_secs_f64(),
        limit.expect("within is false only with a limit").as_secs()
    );
}

fn timed<F: FnOnce() -> Vec<CheckOutcome>>(f: F) -> (Vec<CheckOutcome>, Duration) {
    let start = Instant::now();
    let outcomes = f();
    (outcomes, start.elapsed())
}

#[test]
fn criterion_01_reference_table() {
    let (outcomes, elapsed) = timed(checks::table_reference);
    gate(
        "criterion 1 (reference H table)",
        Some(Duration::from_secs(120)),
        &outcomes,
        elapsed,
    );
}

#[test]
fn criterion_02_closed_form_families() {
    let (outcomes, elapsed) = timed(checks::closed_form_families);
    gate(
        "criterion 2 (closed-form families)",
        Some(Duration::from_secs(60)),
        &outcomes,
        elapsed,
    );
}

#[test]
fn criterion_03_fibonacci_pattern() {
    let (outcomes, elapsed) = timed(|| checks::fibonacci_pattern().expect("suite runs"));
    gate(
        "criterion 3 (Fibonacci slopes)",
        Some(Duration::from_secs(120)),
        &outcomes,
        elapsed,
    );
}

#[test]
fn criterion_04_continued_fraction_pattern() {
    let (outcomes, elapsed) = timed(|| checks::cf_pattern().expect("suite runs"));
    gate(
        "criterion 4 (two-term continued fractions)",
        None,
        &outcomes,
        elapsed,
    );
}

#[test]
fn criterion_05_upper_bound() {
    let (outcomes, elapsed) = timed(checks::upper_bound_pattern);
    gate("criterion 5 (H <= m)", None, &outcomes, elapsed);
}

#[test]
fn criterion_06_divisor_route() {
    let (outcomes, elapsed) = timed(checks::divisor_route_equivalence);
    gate(
        "criterion 6 (interval route vs divisor route)",
        None,
        &outcomes,
        elapsed,
    );
}

#[test]
fn criterion_07_count_laws() {
    let (outcomes, elapsed) = timed(|| checks::count_law_suite(SEED));
    gate(
        "criterion 7 (pairwise counting laws)",
        None,
        &outcomes,
        elapsed,
    );
}

#[test]
fn criterion_08_aggregate_identities() {
    let (outcomes, elapsed) = timed(|| checks::aggregate_identity_suite().expect("suite runs"));
    gate(
        "criterion 8 (solution counts and aggregate identities)",
        None,
        &outcomes,
        elapsed,
    );
}

#[test]
fn criterion_09_range_equivalence() {
    let (outcomes, elapsed) = timed(checks::range_equivalence_suite);
    gate(
        "criterion 9 (candidate range and discriminant bound)",
        None,
        &outcomes,
        elapsed,
    );
}

#[test]
fn criterion_10_twist_chain() {
    let (outcomes, elapsed) = timed(|| checks::twist_suite(SEED).expect("suite runs"));
    gate("criterion 10 (twist reflections)", None, &outcomes, elapsed);
}

#[test]
fn criterion_11_pell_family() {
    let (outcomes, elapsed) = timed(|| checks::pell_suite().expect("suite runs"));
    gate(
        "criterion 11 (Pell-family certificates)",
        Some(Duration::from_secs(10)),
        &outcomes,
        elapsed,
    );
}

#[test]
fn criterion_12_stats_report() {
    let (outcomes, elapsed) = timed(|| checks::stats_suite().expect("suite runs"));
    gate("criterion 12 (statistics sweep)", None, &outcomes, elapsed);
}
