//! Aggregate identities and bounds over the destabilizer counts, and the
//! H-statistics sweep.
//!
//! The individual counts live in [`crate::walls`]; this module verifies the
//! relations that tie them together:
//!
//! * the solution count of r·n − m·s = d over the index set S_{m,r},
//! * the identity Σ_{S_{m,r}} F(n/m, s/r) = G(m, r),
//! * the bound Σ_n H(n/m) ≤ φ(m) + Σ_{d | m, d > 1} (φ(m)/φ(d))·G(d),
//!
//! and produces per-denominator statistics (min / average / sum of H) for
//! exploring the growth of the counts.

use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{euler_phi, ratio, Rational, TauTable};
use crate::walls::{count_h, f_count, g_total_with};
use crate::{invalid, Result};

/// Number of (n, s) ∈ S_{m,r} with r·n − m·s = d, counted by direct
/// enumeration of S_{m,r} = { (n, s) : 1 ≤ n < m, 0 ≤ s ≤ r,
/// gcd(n, m) = gcd(s, r) = 1 }.
pub fn solution_count(m: u64, r: u64, d: u64) -> Result<u64> {
    if m < 2 || r < 1 || r > m - 1 || d < 1 || d > m - 1 {
        return invalid("solution_count requires 1 <= r, d <= m - 1");
    }
    let (m, r, d) = (m as i64, r as i64, d as i64);
    let mut count = 0;
    for n in 1..m {
        if n.gcd(&m) != 1 {
            continue;
        }
        for s in 0..=r {
            if s.gcd(&r) == 1 && r * n - m * s == d {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Which of the three cases of the solution-count formula applies to
/// (m, r, d), and what it asserts about the count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionCountCase {
    /// gcd(m, r) = 1 and gcd(mr, d) = 1: the count is exactly 1.
    ExactlyOne,
    /// gcd(m, r) = a with a | d and gcd(mr/a², d/a) = 1: the count is at
    /// most φ(m)/φ(m/a).
    AtMost(u64),
    /// Otherwise: the count is 0.
    Zero,
}

/// The case of the formula that (m, r, d) falls into.
pub fn solution_count_case(m: u64, r: u64, d: u64) -> Result<SolutionCountCase> {
    if m < 2 || r < 1 || r > m - 1 || d < 1 || d > m - 1 {
        return invalid("solution_count_case requires 1 <= r, d <= m - 1");
    }
    let a = m.gcd(&r);
    if a == 1 && (m * r).gcd(&d) == 1 {
        return Ok(SolutionCountCase::ExactlyOne);
    }
    if d % a == 0 && ((m * r) / (a * a)).gcd(&(d / a)) == 1 {
        let cap = euler_phi(m)? / euler_phi(m / a)?;
        return Ok(SolutionCountCase::AtMost(cap));
    }
    Ok(SolutionCountCase::Zero)
}

/// Does the brute-force solution count satisfy the case formula at
/// (m, r, d)?
pub fn check_solution_count(m: u64, r: u64, d: u64) -> Result<bool> {
    let count = solution_count(m, r, d)?;
    Ok(match solution_count_case(m, r, d)? {
        SolutionCountCase::ExactlyOne => count == 1,
        SolutionCountCase::AtMost(cap) => count <= cap,
        SolutionCountCase::Zero => count == 0,
    })
}

/// Checks Σ_{(n,s) ∈ S_{m,r}} F(n/m, s/r) = G(m, r) exactly.
pub fn check_counting_identity(m: u64, r: u64) -> Result<bool> {
    if m < 2 || r < 1 || r >= m {
        return invalid("counting identity requires 1 <= r < m");
    }
    if m.gcd(&r) != 1 {
        return invalid("counting identity requires gcd(m, r) = 1");
    }
    let lhs: u64 = s_set(m, r)
        .into_iter()
        .map(|(n, s)| f_count(&ratio(n as i64, m as i64), &ratio(s as i64, r as i64)))
        .sum();
    Ok(lhs == crate::walls::g_sum(m, r)?)
}

/// The index set S_{m,r}.
pub fn s_set(m: u64, r: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for n in 1..m {
        if n.gcd(&m) != 1 {
            continue;
        }
        for s in 0..=r {
            if s.gcd(&r) == 1 {
                out.push((n, s));
            }
        }
    }
    out
}

/// Outcome of the sum bound Σ_{gcd(n,m)=1} H(n/m) ≤ φ(m) + Σ_{d|m, d>1}
/// (φ(m)/φ(d))·G(d) for one m.
#[derive(Debug, Clone)]
pub struct SumBoundReport {
    pub m: u64,
    pub h_sum: u64,
    pub bound: u64,
    pub holds: bool,
}

/// The right-hand side φ(m) + Σ_{d | m, d > 1} (φ(m)/φ(d))·G(d) alone.
pub fn sum_bound_value(m: u64) -> Result<u64> {
    if m < 2 {
        return invalid("sum bound requires m >= 2");
    }
    let phi_m = euler_phi(m)?;
    let mut bound = phi_m;
    for d in 2..=m {
        if m % d != 0 {
            continue;
        }
        let taus = TauTable::build(d * d);
        let weight = phi_m / euler_phi(d)?;
        bound += weight * g_total_with(d, &taus);
    }
    Ok(bound)
}

/// Evaluates both sides of the sum bound for m ≥ 2.
pub fn check_sum_bound(m: u64) -> Result<SumBoundReport> {
    let bound = sum_bound_value(m)?;
    let h_sum = h_values(m)?.into_iter().map(|(_, h)| h).sum();
    Ok(SumBoundReport {
        m,
        h_sum,
        bound,
        holds: h_sum <= bound,
    })
}

/// H(n/m) for every 1 ≤ n < m coprime to m, in increasing n, computed in
/// parallel.
pub fn h_values(m: u64) -> Result<Vec<(u64, u64)>> {
    if m < 2 {
        return invalid("h sweep requires m >= 2");
    }
    let m_i = i64::try_from(m).map_err(|_| crate::Error::InvalidInput("m too large".into()))?;
    Ok((1..m)
        .filter(|n| n.gcd(&m) == 1)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| (n, count_h(&ratio(n as i64, m_i)).h_value))
        .collect())
}

/// Exact per-denominator statistics of the chamber counts, plus the one
/// floating-point column: the ratio of Σ H to its conjectured growth scale
/// (φ(m)²/m)·(ln m)².
#[derive(Debug, Clone)]
pub struct StatsRow {
    pub m: u64,
    pub phi: u64,
    pub h_min: u64,
    pub h_ave: Rational,
    pub h_sum: u64,
    pub ratio: f64,
}

pub fn h_stats(m: u64) -> Result<StatsRow> {
    let values = h_values(m)?;
    let phi = values.len() as u64;
    debug_assert_eq!(phi, euler_phi(m).unwrap());
    let h_min = values.iter().map(|&(_, h)| h).min().expect("phi >= 1");
    let h_sum: u64 = values.iter().map(|&(_, h)| h).sum();
    let h_ave = ratio(h_sum as i64, phi as i64);
    let scale = (phi as f64).powi(2) / (m as f64) * (m as f64).ln().powi(2);
    Ok(StatsRow {
        m,
        phi,
        h_min,
        h_ave,
        h_sum,
        ratio: h_sum as f64 / scale,
    })
}

/// Stats for every m in [m_lo, m_hi], in order, computed in parallel.
pub fn h_stats_range(m_lo: u64, m_hi: u64) -> Result<Vec<StatsRow>> {
    if m_lo < 2 || m_hi < m_lo {
        return invalid("stats range requires 2 <= m_lo <= m_hi");
    }
    (m_lo..=m_hi)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(h_stats)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solution_count_examples() {
        assert_eq!(solution_count(7, 3, 2).unwrap(), 1);
        assert_eq!(solution_count(6, 2, 3).unwrap(), 0);
        assert_eq!(solution_count(5, 1, 2).unwrap(), 1);
        assert!(solution_count(5, 0, 2).is_err());
        assert!(solution_count(5, 5, 2).is_err());
        assert!(solution_count(5, 1, 0).is_err());
        assert!(solution_count(5, 1, 5).is_err());
    }

    #[test]
    fn solution_count_cases_small() {
        assert_eq!(
            solution_count_case(7, 3, 2).unwrap(),
            SolutionCountCase::ExactlyOne
        );
        assert_eq!(
            solution_count_case(6, 2, 3).unwrap(),
            SolutionCountCase::Zero
        );
        // m = 6, r = 2, d = 2: a = 2, d/a = 1, mr/a² = 3 → bounded case
        assert_eq!(
            solution_count_case(6, 2, 2).unwrap(),
            SolutionCountCase::AtMost(1)
        );
        for m in 2..=14 {
            for r in 1..m {
                for d in 1..m {
                    assert!(
                        check_solution_count(m, r, d).unwrap(),
                        "case formula fails at (m, r, d) = ({m}, {r}, {d})"
                    );
                }
            }
        }
    }

    #[test]
    fn counting_identity_examples() {
        assert!(check_counting_identity(3, 1).unwrap());
        assert!(check_counting_identity(5, 2).unwrap());
        assert!(check_counting_identity(7, 3).unwrap());
        assert!(check_counting_identity(6, 2).is_err());
        assert!(check_counting_identity(3, 3).is_err());
    }

    #[test]
    fn s_set_small() {
        assert_eq!(s_set(3, 1), vec![(1, 0), (1, 1), (2, 0), (2, 1)]);
    }

    #[test]
    fn sum_bound_examples() {
        let r = check_sum_bound(5).unwrap();
        assert_eq!((r.h_sum, r.bound, r.holds), (22, 30, true));
        let r = check_sum_bound(2).unwrap();
        assert_eq!((r.h_sum, r.bound, r.holds), (2, 3, true));
        let r = check_sum_bound(3).unwrap();
        assert_eq!((r.h_sum, r.bound, r.holds), (6, 8, true));
    }

    #[test]
    fn stats_examples() {
        let s = h_stats(5).unwrap();
        assert_eq!((s.phi, s.h_min, s.h_sum), (4, 5, 22));
        assert_eq!(s.h_ave, ratio(11, 2));
        let s = h_stats(7).unwrap();
        assert_eq!((s.h_min, s.h_sum), (7, 42));
        let s = h_stats(2).unwrap();
        assert_eq!((s.h_min, s.h_sum), (2, 2));
        assert!(s.ratio > 0.0);
        let rows = h_stats_range(2, 10).unwrap();
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[0].m, 2);
        assert_eq!(rows[8].m, 10);
    }
}
