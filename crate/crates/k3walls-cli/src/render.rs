//! Report assembly for every output format. All functions build complete
//! strings so identical inputs give byte-identical output.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use k3walls::arith::Rational;
use k3walls::bounds::StatsRow;
use k3walls::checks::CheckOutcome;
use k3walls::lattice::DivisorClass;
use k3walls::mukai::MukaiVector;
use k3walls::pell::PellCertificate;
use k3walls::walls::{h_of, CountReport, Destabilizer};

use crate::Format;

/// Render a rational as "num/den" even when the denominator is 1.
pub fn frac(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Convert to a JSON-safe integer, rejecting values a JSON number cannot
/// hold exactly.
pub fn json_int(v: &BigInt) -> Result<i64, String> {
    i64::try_from(v).map_err(|_| format!("value {v} is too large for a JSON number"))
}

pub fn json_doc(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("reports serialize to JSON");
    s.push('\n');
    s
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn by_wall(report: &CountReport) -> BTreeMap<(BigInt, BigInt), Vec<&Destabilizer>> {
    let mut groups: BTreeMap<(BigInt, BigInt), Vec<&Destabilizer>> = BTreeMap::new();
    for d in &report.destabilizers {
        groups.entry(d.wall().key()).or_default().push(d);
    }
    groups
}

pub fn count_text(target: &Rational, report: &CountReport, walls: bool) -> String {
    let mut s = format!("H({target}) = {}\n", report.h_value);
    if walls {
        let groups = by_wall(report);
        for (i, w) in report.walls.iter().enumerate() {
            let dests = groups
                .get(&w.key())
                .map(|v| {
                    v.iter()
                        .map(|d| d.coords().to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                })
                .unwrap_or_default();
            s.push_str(&format!("wall {}: {w} from {dests}\n", i + 1));
        }
    }
    s
}

pub fn count_json(target: &Rational, report: &CountReport) -> Result<String, String> {
    let groups = by_wall(report);
    let mut walls = Vec::with_capacity(report.walls.len());
    for w in &report.walls {
        let mut dests = Vec::new();
        if let Some(group) = groups.get(&w.key()) {
            for d in group {
                dests.push(json!({
                    "slope": format!("{}/{}", d.coords().n(), d.coords().m()),
                    "k": json_int(d.coords().k())?,
                }));
            }
        }
        walls.push(json!({
            "delta": [json_int(w.delta().coeff(0))?, json_int(w.delta().coeff(1))?],
            "c": frac(w.position_c()),
            "destabilizers": dests,
        }));
    }
    Ok(json_doc(json!({
        "target": frac(target),
        "h": report.h_value,
        "walls": walls,
    })))
}

/// Rows (m, n, H) for 2 <= m <= max_m, gcd(n, m) = 1, 1 <= n <= m/2,
/// ordered by m then n.
pub fn table_rows(max_m: u64) -> Result<Vec<(u64, u64, u64)>, String> {
    let max_m = i64::try_from(max_m).map_err(|_| "--max-m is out of range".to_string())?;
    let pairs: Vec<(i64, i64)> = (2..=max_m)
        .flat_map(|m| {
            (1..=m / 2)
                .filter(move |n| num_integer::gcd(*n, m) == 1)
                .map(move |n| (m, n))
        })
        .collect();
    Ok(pairs
        .into_par_iter()
        .map(|(m, n)| (m as u64, n as u64, h_of(n, m)))
        .collect())
}

pub fn outcomes_text(suite: &str, outcomes: &[CheckOutcome]) -> String {
    let mut s = String::new();
    let mut passed = 0usize;
    for o in outcomes {
        if o.passed {
            passed += 1;
            s.push_str(&format!("[PASS] {}: {}\n", o.name, o.detail));
        } else {
            s.push_str(&format!("[FAIL] {}: {}\n", o.name, o.detail));
        }
    }
    s.push_str(&format!(
        "suite {suite}: {passed}/{} checks passed\n",
        outcomes.len()
    ));
    s
}

pub fn outcomes_json(suite: &str, outcomes: &[CheckOutcome]) -> String {
    let checks: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({"name": o.name, "passed": o.passed, "detail": o.detail}))
        .collect();
    json_doc(json!({
        "suite": suite,
        "passed": outcomes.iter().all(|o| o.passed),
        "checks": checks,
    }))
}

pub fn outcomes_csv(outcomes: &[CheckOutcome]) -> String {
    let mut s = String::from("name,passed,detail\n");
    for o in outcomes {
        s.push_str(&format!(
            "{},{},{}\n",
            csv_quote(&o.name),
            o.passed,
            csv_quote(&o.detail)
        ));
    }
    s
}

pub fn stats(rows: &[StatsRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("m,phi,h_min,h_ave_num,h_ave_den,h_sum,ratio\n");
            for r in rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{:.6}\n",
                    r.m,
                    r.phi,
                    r.h_min,
                    r.h_ave.numer(),
                    r.h_ave.denom(),
                    r.h_sum,
                    r.ratio
                ));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in rows {
                s.push_str(&format!(
                    "m={} phi={} h_min={} h_ave={} h_sum={} ratio={:.6}\n",
                    r.m, r.phi, r.h_min, r.h_ave, r.h_sum, r.ratio
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "m": r.m,
                        "phi": r.phi,
                        "h_min": r.h_min,
                        "h_ave": frac(&r.h_ave),
                        "h_sum": r.h_sum,
                        "ratio": format!("{:.6}", r.ratio),
                    })
                })
                .collect();
            json_doc(json!({ "rows": rows }))
        }
    }
}

/// Coefficients of a class on the rank-three lattice, printed against the
/// report basis (h, e, f).
const REPORT_LABELS: [&str; 3] = ["h", "e", "f"];

fn report_basis(d: &DivisorClass) -> String {
    let mut out = String::new();
    for (c, label) in d.coeffs().iter().zip(REPORT_LABELS) {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        if mag != BigInt::from(1) {
            out.push_str(&mag.to_string());
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn report_vector(v: &MukaiVector) -> String {
    format!("({}, {}, {})", v.rk(), report_basis(v.c1()), v.s())
}

fn coeff_array(d: &DivisorClass) -> Result<Value, String> {
    let cs: Result<Vec<i64>, String> = d.coeffs().iter().map(json_int).collect();
    Ok(json!(cs?))
}

pub fn pell(certs: &[PellCertificate], format: Format) -> Result<String, String> {
    match format {
        Format::Text => {
            let mut s = String::new();
            let mut passed = 0usize;
            for (i, c) in certs.iter().enumerate() {
                if c.all_passed() {
                    passed += 1;
                }
                s.push_str(&format!(
                    "solution {}: (a, b) = ({}, {})\n",
                    i + 1,
                    c.solution.a,
                    c.solution.b
                ));
                s.push_str(&format!(
                    "  D = {}  E = {}  H = {}  v = {}\n",
                    report_basis(&c.d),
                    report_basis(&c.e),
                    report_basis(&c.h),
                    report_vector(&c.mukai_v)
                ));
                let failures = c.failed();
                if failures.is_empty() {
                    s.push_str(&format!(
                        "  checks: {}/{} passed\n",
                        c.checks.len(),
                        c.checks.len()
                    ));
                } else {
                    for f in failures {
                        s.push_str(&format!("  [FAIL] {}: {} vs {}\n", f.name, f.lhs, f.rhs));
                    }
                }
            }
            s.push_str(&format!(
                "pell family: {passed}/{} certificates passed\n",
                certs.len()
            ));
            Ok(s)
        }
        Format::Csv => {
            let mut s = String::from("index,a,b,checks_passed,checks_total\n");
            for (i, c) in certs.iter().enumerate() {
                let ok = c.checks.iter().filter(|r| r.passed).count();
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    i + 1,
                    c.solution.a,
                    c.solution.b,
                    ok,
                    c.checks.len()
                ));
            }
            Ok(s)
        }
        Format::Json => {
            let mut list = Vec::with_capacity(certs.len());
            for c in certs {
                let checks: Vec<Value> = c
                    .checks
                    .iter()
                    .map(|r| {
                        json!({
                            "name": r.name,
                            "passed": r.passed,
                            "lhs": r.lhs,
                            "rhs": r.rhs,
                        })
                    })
                    .collect();
                list.push(json!({
                    "a": c.solution.a.to_string(),
                    "b": c.solution.b.to_string(),
                    "d": coeff_array(&c.d)?,
                    "e": coeff_array(&c.e)?,
                    "h": coeff_array(&c.h)?,
                    "v": {
                        "rk": json_int(c.mukai_v.rk())?,
                        "c1": coeff_array(c.mukai_v.c1())?,
                        "s": json_int(c.mukai_v.s())?,
                    },
                    "passed": c.all_passed(),
                    "checks": checks,
                }));
            }
            Ok(json_doc(json!({
                "passed": certs.iter().all(|c| c.all_passed()),
                "certificates": list,
            })))
        }
    }
}

pub fn cf_label(terms: &[u64]) -> String {
    let inner: Vec<String> = terms.iter().map(u64::to_string).collect();
    format!("[{}]", inner.join(", "))
}
