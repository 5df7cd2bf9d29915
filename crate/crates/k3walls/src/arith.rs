//! Small exact number-theory toolkit: Euler φ, divisor counts τ (two
//! independent routes), canonical modular inverses, continued fractions,
//! Fibonacci numbers and the fundamental-solution recurrence for
//! 2x² − y² = 1.
//!
//! Fractions are [`num_rational::BigRational`] values, which are always kept
//! in lowest terms with a positive denominator; that invariant is relied on
//! throughout the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{invalid, Error, Result};

/// Exact rational numbers in lowest terms, positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a [`BigInt`] from a machine integer.
pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Build a reduced fraction n/d. Panics if `d == 0`; callers validate first.
pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Euler's totient of `m ≥ 1`, by trial-division factorization.
pub fn euler_phi(m: u64) -> Result<u64> {
    if m == 0 {
        return invalid("euler_phi requires m >= 1");
    }
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    Ok(phi)
}

/// The inverse of `n` modulo `m`, as the canonical representative in
/// `[0, m)`. By convention the inverse modulo 1 is 0. Errors when
/// `gcd(n, m) != 1` (and when `m <= 0`).
pub fn mod_inverse_canonical(n: &BigInt, m: &BigInt) -> Result<BigInt> {
    if m.is_zero() || m.is_negative() {
        return invalid(format!("modulus must be positive, got {m}"));
    }
    if m.is_one() {
        return Ok(BigInt::zero());
    }
    let n_red = n.mod_floor(m);
    let ext = n_red.extended_gcd(m);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible(n.clone(), m.clone()));
    }
    Ok(ext.x.mod_floor(m))
}

/// Number of divisors of `n ≥ 1`, by trial division. Independent of
/// [`TauTable`]; the two are cross-checked against each other in tests.
pub fn tau(n: u64) -> Result<u64> {
    if n == 0 {
        return invalid("tau requires n >= 1");
    }
    let mut count = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    Ok(count)
}

/// Sieved table of divisor counts τ(1..=upto).
///
/// Built by the increment sieve (each d bumps its multiples), so it shares no
/// code path with [`tau`].
pub struct TauTable {
    counts: Vec<u32>,
}

impl TauTable {
    pub fn build(upto: u64) -> Self {
        let upto = upto as usize;
        let mut counts = vec![0u32; upto + 1];
        for d in 1..=upto {
            for multiple in (d..=upto).step_by(d) {
                counts[multiple] += 1;
            }
        }
        TauTable { counts }
    }

    /// τ(n). Panics if `n` is 0 or beyond the sieved range.
    pub fn get(&self, n: u64) -> u64 {
        assert!(n >= 1, "tau is defined for n >= 1");
        u64::from(self.counts[n as usize])
    }

    pub fn limit(&self) -> u64 {
        (self.counts.len() - 1) as u64
    }
}

/// Value of the continued fraction `[a1, ..., as] = 1/(a1 + 1/(... + 1/as))`.
///
/// All terms must be positive; the empty list is rejected.
pub fn cf_value(terms: &[u64]) -> Result<Rational> {
    if terms.is_empty() {
        return invalid("continued fraction needs at least one term");
    }
    if terms.contains(&0) {
        return invalid("continued fraction terms must be positive");
    }
    let mut acc = Rational::from_integer(BigInt::from(terms[terms.len() - 1]));
    for &a in terms[..terms.len() - 1].iter().rev() {
        acc = Rational::from_integer(BigInt::from(a)) + acc.recip();
    }
    Ok(acc.recip())
}

/// Fibonacci numbers with `b1 = b2 = 1`.
pub fn fibonacci(n: u64) -> Result<BigInt> {
    if n == 0 {
        return invalid("fibonacci is indexed from 1");
    }
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    for _ in 2..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    Ok(if n == 1 { a } else { b })
}

/// First `count` positive solutions of `2x² − y² = 1`, starting from (1, 1)
/// and applying `(x, y) → (3x + 2y, 4x + 3y)`.
pub fn pell_solutions(count: usize) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(count);
    let (mut x, mut y) = (BigInt::one(), BigInt::one());
    for _ in 0..count {
        out.push((x.clone(), y.clone()));
        let nx = 3 * &x + 2 * &y;
        let ny = 4 * &x + 3 * &y;
        x = nx;
        y = ny;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(2).unwrap(), 1);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(93).unwrap(), 60);
        assert_eq!(euler_phi(811).unwrap(), 810);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn phi_divisor_sum_identity() {
        // Σ_{d | m} φ(d) = m
        for m in 1..=2000u64 {
            let total: u64 = (1..=m)
                .filter(|d| m % d == 0)
                .map(|d| euler_phi(d).unwrap())
                .sum();
            assert_eq!(total, m, "divisor-sum identity failed at m = {m}");
        }
    }

    #[test]
    fn inverse_canonical_representative() {
        assert_eq!(mod_inverse_canonical(&big(3), &big(7)).unwrap(), big(5));
        assert_eq!(mod_inverse_canonical(&big(2), &big(5)).unwrap(), big(3));
        // negative input reduces first
        assert_eq!(mod_inverse_canonical(&big(-1), &big(5)).unwrap(), big(4));
        // modulus 1: always 0
        assert_eq!(mod_inverse_canonical(&big(0), &big(1)).unwrap(), big(0));
        assert_eq!(mod_inverse_canonical(&big(7), &big(1)).unwrap(), big(0));
    }

    #[test]
    fn inverse_rejects_non_coprime() {
        assert!(matches!(
            mod_inverse_canonical(&big(2), &big(4)),
            Err(Error::NotInvertible(_, _))
        ));
        assert!(mod_inverse_canonical(&big(0), &big(5)).is_err());
        assert!(mod_inverse_canonical(&big(3), &big(0)).is_err());
    }

    #[test]
    fn inverse_exhaustive_small_moduli() {
        for m in 1..=200i64 {
            for n in 1..m.max(2) {
                if big(n).gcd(&big(m)) == big(1) {
                    let inv = mod_inverse_canonical(&big(n), &big(m)).unwrap();
                    assert!(inv >= big(0) && inv < big(m));
                    assert_eq!((inv * n).mod_floor(&big(m)), big(1 % m));
                }
            }
        }
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau(1).unwrap(), 1);
        assert_eq!(tau(7).unwrap(), 2);
        assert_eq!(tau(4).unwrap(), 3);
        assert_eq!(tau(12).unwrap(), 6);
        assert!(tau(0).is_err());
    }

    #[test]
    fn tau_sieve_matches_trial_division() {
        let table = TauTable::build(3000);
        for n in 1..=3000 {
            assert_eq!(table.get(n), tau(n).unwrap(), "tau mismatch at {n}");
        }
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(cf_value(&[2, 3]).unwrap(), ratio(3, 7));
        assert_eq!(cf_value(&[3]).unwrap(), ratio(1, 3));
        assert_eq!(cf_value(&[2, 2, 2]).unwrap(), ratio(5, 12));
        assert_eq!(cf_value(&[1]).unwrap(), ratio(1, 1));
        assert!(cf_value(&[]).is_err());
        assert!(cf_value(&[2, 0, 3]).is_err());
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(1).unwrap(), big(1));
        assert_eq!(fibonacci(2).unwrap(), big(1));
        assert_eq!(fibonacci(3).unwrap(), big(2));
        assert_eq!(fibonacci(10).unwrap(), big(55));
        assert_eq!(fibonacci(21).unwrap(), big(10946));
        assert!(fibonacci(0).is_err());
    }

    #[test]
    fn pell_recurrence() {
        let sols = pell_solutions(12);
        assert_eq!(sols[0], (big(1), big(1)));
        assert_eq!(sols[1], (big(5), big(7)));
        assert_eq!(sols[2], (big(29), big(41)));
        let mut prev_x = BigInt::zero();
        for (x, y) in &sols {
            assert_eq!(2 * x * x - y * y, BigInt::one());
            assert!(*x > prev_x, "x coordinates must strictly increase");
            prev_x = x.clone();
        }
    }
}
