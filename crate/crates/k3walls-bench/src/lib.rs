//! Benchmark-only crate; see `benches/counting.rs`.
//!
//! Inputs used by the benchmarks, kept here so they can be unit-tested
//! against the frozen reference values.

/// Denominator-93 slopes spanning cheap and expensive counts.
pub const MEDIUM_TARGETS: &[(i64, i64)] = &[(1, 93), (23, 93), (46, 93)];

/// The spike near 270/811 plus a flat neighbor.
pub const LARGE_TARGETS: &[(i64, i64)] = &[(270, 811), (277, 811)];

#[cfg(test)]
mod tests {
    use super::*;
    use k3walls::arith::ratio;
    use k3walls::walls::count_h;

    #[test]
    fn bench_targets_match_reference() {
        let expect = [
            (1, 93, 93),
            (23, 93, 31),
            (46, 93, 50),
            (270, 811, 276),
            (277, 811, 45),
        ];
        for (n, m, h) in expect {
            assert_eq!(count_h(&ratio(n, m)).h_value, h, "H({n}/{m})");
        }
        assert_eq!(MEDIUM_TARGETS.len() + LARGE_TARGETS.len(), 5);
    }
}
