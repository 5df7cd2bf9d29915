//! Destabilizer enumeration and wall-and-chamber counting on the elliptic
//! lattice.
//!
//! For a target spherical vector v(n/m, 0) the destabilizing factors are the
//! spherical vectors v(s/r, k) with r < m satisfying the exact inequality
//!
//! ```text
//! (n/m - s/r)² - 1/r²  <  (n/m - s/r) · ((n - inv_m(n))/m - (s - inv_r(s))/r - k)  <  0
//! ```
//!
//! and each destabilizer cuts the wall
//!
//! ```text
//! δ = (r·n - m·s)·s + (r·(n - inv_m(n)) - m·(k·r + s - inv_r(s)))·e
//! ```
//!
//! (primitively normalized) inside the ample cone. The chamber count is the
//! number of distinct walls plus one.
//!
//! Everything is solved as exact integer/rational intervals. In particular
//! the admissible shifts k for a fixed candidate slope s/r form an open
//! rational interval whose integer points are counted directly — no scanning.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{mod_inverse_canonical, ratio, Rational, TauTable};
use crate::lattice::{self, DivisorClass};
use crate::mukai::{self, ChernVector, MukaiVector, ParamCoords};
use crate::{invalid, Result};

/// A wall inside the ample cone: the primitive class δ = p·s + q·e with
/// p > 0 > q whose perpendicular crosses the cone, together with the exact
/// crossing position c > 2 on the ray family s + c·e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    delta: DivisorClass,
    position_c: Rational,
}

impl Wall {
    pub fn delta(&self) -> &DivisorClass {
        &self.delta
    }

    pub fn position_c(&self) -> &Rational {
        &self.position_c
    }

    /// Dedup/sort key: the primitive coefficients (p, q).
    pub fn key(&self) -> (BigInt, BigInt) {
        (self.delta.coeff(0).clone(), self.delta.coeff(1).clone())
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delta={} c={}", self.delta, self.position_c)
    }
}

/// A destabilizing factor of some target: its parameters, its spherical
/// vector, and the wall it cuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Destabilizer {
    coords: ParamCoords,
    vector: MukaiVector,
    wall: Wall,
}

impl Destabilizer {
    pub fn coords(&self) -> &ParamCoords {
        &self.coords
    }

    pub fn vector(&self) -> &MukaiVector {
        &self.vector
    }

    pub fn wall(&self) -> &Wall {
        &self.wall
    }
}

/// Full result of a chamber count for one target slope.
#[derive(Debug, Clone)]
pub struct CountReport {
    pub target: ParamCoords,
    pub h_value: u64,
    /// Distinct walls, sorted by crossing position.
    pub walls: Vec<Wall>,
    /// All destabilizers, ordered by (r, s, k).
    pub destabilizers: Vec<Destabilizer>,
}

/// Cached integer data for one side of the inequality.
struct Side {
    num: BigInt,     // n (or s)
    den: BigInt,     // m (or r)
    num_inv: BigInt, // canonical inverse of num modulo den
}

impl Side {
    fn new(num: &BigInt, den: &BigInt) -> Self {
        let num_inv = mod_inverse_canonical(num, den).expect("reduced fraction");
        Side {
            num: num.clone(),
            den: den.clone(),
            num_inv,
        }
    }
}

/// Inclusive integer bounds for the admissible shifts k of candidate s/r
/// against target n/m, or `None` when no shift works.
///
/// Derivation: clearing denominators in the destabilizer inequality with
/// P = r·n − m·s, Q0 = r·(n − inv_m(n)) − m·(s − inv_r(s)) leaves
/// P² − m² < P·Q0 − k·P·r·m < 0, an open interval in k.
fn k_bounds(target: &Side, cand: &Side) -> Option<(BigInt, BigInt)> {
    let (n, m) = (&target.num, &target.den);
    let (s, r) = (&cand.num, &cand.den);
    if r >= m {
        return None;
    }
    let p = r * n - m * s;
    if p.is_zero() {
        return None;
    }
    let q0 = r * (n - &target.num_inv) - m * (s - &cand.num_inv);
    let mut c = &p * r * m;
    let mut a = &p * &q0; // k·c > a
    let mut b = &a + m * m - &p * &p; // k·c < b
    if c.is_negative() {
        // flip to a positive denominator, swapping the bounds
        c = -c;
        std::mem::swap(&mut a, &mut b);
        a = -a;
        b = -b;
    }
    let lo = a.div_floor(&c) + 1;
    let hi = b.div_ceil(&c) - 1;
    (lo <= hi).then_some((lo, hi))
}

/// Does v(s/r, k) destabilize v(n/m, 0)? Evaluated literally as the exact
/// rational inequality; the enumeration path goes through integer interval
/// arithmetic instead, and the two are cross-checked in tests.
pub fn satisfies_513(target: &Rational, cand: &Rational, k: &BigInt) -> bool {
    let (n, m) = (target.numer(), target.denom());
    let (s, r) = (cand.numer(), cand.denom());
    if r >= m {
        return false;
    }
    let a = target - cand;
    if a.is_zero() {
        return false;
    }
    let inv_n = mod_inverse_canonical(n, m).expect("reduced fraction");
    let inv_s = mod_inverse_canonical(s, r).expect("reduced fraction");
    let beta = ratio(n - inv_n, m.clone())
        - ratio(s - inv_s, r.clone())
        - Rational::from_integer(k.clone());
    let middle = &a * beta;
    let lower = &a * &a - ratio(BigInt::one(), r * r);
    lower < middle && middle < Rational::zero()
}

/// Number of integer shifts k for which v(s/r, k) destabilizes v(n/m, 0),
/// computed by the exact interval solution.
pub fn f_count(target: &Rational, cand: &Rational) -> u64 {
    if cand.denom() >= target.denom() {
        return 0;
    }
    let t = Side::new(target.numer(), target.denom());
    let c = Side::new(cand.numer(), cand.denom());
    match k_bounds(&t, &c) {
        Some((lo, hi)) => u64::try_from(hi - lo + 1u32).expect("count fits in u64"),
        None => 0,
    }
}

/// Same count through the divisor-condition route: with d = r·n − m·s and
/// gcd(m, r) = 1, the count equals
/// #{ t ≥ 1 : d | m² + r² − t·m·r  and  m² + r² − t·m·r > d² }.
///
/// Kept deliberately independent of [`f_count`]; the two routes are compared
/// exhaustively in the verification suites.
pub fn f_count_divisor(target: &Rational, cand: &Rational) -> Result<u64> {
    let (n, m) = (target.numer(), target.denom());
    let (s, r) = (cand.numer(), cand.denom());
    if r >= m {
        return invalid("divisor route requires r < m");
    }
    if !m.gcd(r).is_one() {
        return invalid("divisor route requires gcd(m, r) = 1");
    }
    let d = (r * n - m * s).abs();
    debug_assert!(!d.is_zero());
    let d_sq = &d * &d;
    let step = m * r;
    let mut a = m * m + r * r - &step;
    let mut count = 0;
    while a > d_sq {
        if a.is_multiple_of(&d) {
            count += 1;
        }
        a -= &step;
    }
    Ok(count)
}

/// The wall cut by destabilizer `cand` = (s/r, k) on target (n/m, 0).
///
/// Errors when the pair does not actually span a wall through the ample cone
/// (which cannot happen for pairs produced by the enumeration).
pub fn wall_of(target: &ParamCoords, cand: &ParamCoords) -> Result<Wall> {
    let t = Side::new(target.n(), target.m());
    let c = Side::new(cand.n(), cand.m());
    wall_from_sides(&t, &c, cand.k())
}

fn wall_from_sides(target: &Side, cand: &Side, k: &BigInt) -> Result<Wall> {
    let (n, m) = (&target.num, &target.den);
    let (s, r) = (&cand.num, &cand.den);
    let p_raw = r * n - m * s;
    let q_raw = r * (n - &target.num_inv) - m * (k * r + s - &cand.num_inv);
    let delta = lattice::primitive_normalize(&DivisorClass::elliptic(p_raw, q_raw))?;
    if !lattice::perp_meets_ample(&delta)? {
        return invalid("candidate does not span a wall through the ample cone");
    }
    let p = delta.coeff(0).clone();
    let q = delta.coeff(1).clone();
    let position_c = ratio(2 * &p - q, p);
    Ok(Wall { delta, position_c })
}

/// All destabilizers of v(n/m, 0) with candidate rank r ≤ max_r, ordered by
/// (r, s, k). The target shift must be 0 and m ≥ 2.
pub fn enumerate_destabilizers_up_to(
    target: &ParamCoords,
    max_r: &BigInt,
) -> Result<Vec<Destabilizer>> {
    if !target.k().is_zero() {
        return invalid("destabilizer enumeration targets the k = 0 representative");
    }
    if *target.m() < BigInt::from(2) {
        return invalid("destabilizer enumeration requires a non-integer slope");
    }
    let t = Side::new(target.n(), target.m());
    let (n, m) = (&t.num, &t.den);
    let mut out = Vec::new();
    let mut r = BigInt::one();
    while &r <= max_r {
        // Window |n/m - s/r| < 1/r, i.e. s strictly between (r·n ± m)/m.
        let rn = &r * n;
        let s_lo: BigInt = (&rn - m).div_floor(m) + 1;
        let s_hi: BigInt = (&rn + m).div_ceil(m) - 1;
        let mut s = s_lo;
        while s <= s_hi {
            if s.gcd(&r).is_one() {
                let c = Side::new(&s, &r);
                if let Some((k_lo, k_hi)) = k_bounds(&t, &c) {
                    let mut k = k_lo;
                    while k <= k_hi {
                        let coords =
                            ParamCoords::new(s.clone(), r.clone(), k.clone()).expect("r >= 1");
                        let vector = mukai::from_param(&coords);
                        let wall =
                            wall_from_sides(&t, &c, &k).expect("destabilizers always span walls");
                        out.push(Destabilizer {
                            coords,
                            vector,
                            wall,
                        });
                        k += 1;
                    }
                }
            }
            s += 1;
        }
        r += 1;
    }
    Ok(out)
}

/// Destabilizers with the standard rank window r ≤ ⌊m/2⌋, which cuts the
/// same wall set as r < m.
pub fn enumerate_destabilizers(target: &ParamCoords) -> Result<Vec<Destabilizer>> {
    enumerate_destabilizers_up_to(target, &target.m().div_floor(&BigInt::from(2)))
}

/// Collapse a destabilizer list to its distinct walls, sorted by crossing
/// position.
pub fn distinct_walls(dests: &[Destabilizer]) -> Vec<Wall> {
    let mut by_key: BTreeMap<(BigInt, BigInt), Wall> = BTreeMap::new();
    for d in dests {
        by_key.entry(d.wall.key()).or_insert_with(|| d.wall.clone());
    }
    let mut walls: Vec<Wall> = by_key.into_values().collect();
    walls.sort_by(|a, b| a.position_c.cmp(&b.position_c));
    walls
}

/// Chamber count for an arbitrary rational slope.
///
/// The slope is reduced mod 1 to n/m with 0 ≤ n < m (counts are invariant
/// under integer shifts and sign); integer slopes give one chamber and no
/// walls.
pub fn count_h(slope: &Rational) -> CountReport {
    let frac = slope - slope.floor();
    let target = ParamCoords::new(frac.numer().clone(), frac.denom().clone(), 0)
        .expect("denominator is positive");
    if target.m().is_one() {
        return CountReport {
            target,
            h_value: 1,
            walls: Vec::new(),
            destabilizers: Vec::new(),
        };
    }
    let destabilizers =
        enumerate_destabilizers(&target).expect("reduced non-integer slope with k = 0");
    let walls = distinct_walls(&destabilizers);
    CountReport {
        h_value: (walls.len() + 1) as u64,
        target,
        walls,
        destabilizers,
    }
}

/// Convenience: just the chamber count of n/m.
pub fn h_of(n: i64, m: i64) -> u64 {
    count_h(&ratio(n, m)).h_value
}

// ---------------------------------------------------------------------------
// Divisor-function sums attached to the destabilizer counts.
// ---------------------------------------------------------------------------

/// The value set A_{m,r} = { m² + r² − t·m·r : t ∈ ℤ } ∩ [1, m²].
fn value_set(m: u64, r: u64) -> Vec<u64> {
    debug_assert!(r >= 1 && r < m);
    let m2 = m * m;
    let step = m * r;
    let mut a = m2 + r * r - step; // t = 1; already ≤ m² since r < m
    let mut out = Vec::new();
    while a >= 1 {
        out.push(a);
        if a < step {
            break;
        }
        a -= step;
    }
    out
}

fn g_sum_with(m: u64, r: u64, taus: &TauTable) -> u64 {
    value_set(m, r)
        .into_iter()
        .map(|a| 2 * (taus.get(a) / 2))
        .sum()
}

/// G(m, r) = 2 · Σ_{a ∈ A_{m,r}} ⌊τ(a)/2⌋ for 1 ≤ r < m.
pub fn g_sum(m: u64, r: u64) -> Result<u64> {
    if m < 2 || r < 1 || r >= m {
        return invalid("g_sum requires 1 <= r < m with m >= 2");
    }
    let taus = TauTable::build(m * m);
    Ok(g_sum_with(m, r, &taus))
}

/// G(m) = Σ_{1 ≤ r < m, gcd(r, m) = 1} G(m, r).
pub fn g_total(m: u64) -> Result<u64> {
    if m < 2 {
        return invalid("g_total requires m >= 2");
    }
    let taus = TauTable::build(m * m);
    Ok(g_total_with(m, &taus))
}

pub(crate) fn g_total_with(m: u64, taus: &TauTable) -> u64 {
    (1..m)
        .filter(|r| r.gcd(&m) == 1)
        .map(|r| g_sum_with(m, r, taus))
        .sum()
}

/// G′(m) = Σ_{a ∈ A_m} τ(a) over the deduplicated union
/// A_m = { m² + r² − t·m·r : r, t ≥ 1, gcd(m, r) = 1 } ∩ [1, m²].
///
/// Writing a = m² − r·u with u = t·m − r ≥ 1 shows r·u ≤ m² − 1, so only
/// r < m² can contribute and the union is finite.
pub fn g_prime(m: u64) -> Result<u64> {
    if m < 2 {
        return invalid("g_prime requires m >= 2");
    }
    let m2 = m * m;
    let taus = TauTable::build(m2);
    let mut values: BTreeSet<u64> = BTreeSet::new();
    for r in 1..m2 {
        if r.gcd(&m) != 1 {
            continue;
        }
        let t_min = r.div_ceil(m).max(1); // a ≤ m²  ⟺  t ≥ r/m
        let t_max = (m2 + r * r - 1) / (m * r); // a ≥ 1
        for t in t_min..=t_max {
            values.insert(m2 + r * r - t * m * r);
        }
    }
    Ok(values.iter().map(|&a| taus.get(a)).sum())
}

// ---------------------------------------------------------------------------
// Numerical wall candidates from the discriminant bound.
// ---------------------------------------------------------------------------

/// The lower bound on δ² for a potential wall of the Chern vector
/// (rk, ch1, ch2): B = −rk²·ch1² + 2·rk³·ch2, replaced by −1 when
/// non-negative (in which case no candidate survives, since walls satisfy
/// δ² ≤ −2).
fn candidate_bound(c: &ChernVector) -> BigInt {
    let l_sq = lattice::self_intersection(c.ch1());
    let rk = c.rk();
    let b: BigInt = -(rk * rk) * l_sq + 2 * rk * rk * rk * c.ch2();
    if b.is_negative() {
        b
    } else {
        BigInt::from(-1)
    }
}

fn check_candidate_input(c: &ChernVector) -> Result<()> {
    if !c.ch1().lattice().is_elliptic() {
        return Err(crate::Error::ExpectedElliptic);
    }
    if !c.rk().is_positive() {
        return invalid("candidate enumeration requires positive rank");
    }
    let mut g = c.rk().clone();
    for coeff in c.ch1().coeffs() {
        g = g.gcd(coeff);
    }
    if !g.is_one() {
        return invalid("(rk, ch1) must be primitive");
    }
    Ok(())
}

/// All primitive classes δ = p·s + q·e with p > 0 > q whose perpendicular
/// crosses the ample cone and which satisfy the numerical bound δ² ≥ B —
/// a finite superset of the actual walls. Sorted by crossing position.
pub fn numerical_wall_candidates(c: &ChernVector) -> Result<Vec<Wall>> {
    check_candidate_input(c)?;
    let bound = -candidate_bound(c); // 2·p·(p − q) ≤ bound
    let mut walls = Vec::new();
    let mut p = BigInt::one();
    while 2 * &p * (&p + 1u32) <= bound {
        let mut q = BigInt::from(-1);
        while 2 * &p * (&p - &q) <= bound {
            if p.gcd(&q).is_one() {
                let delta = DivisorClass::elliptic(p.clone(), q.clone());
                let position_c = ratio(2 * &p - &q, p.clone());
                walls.push(Wall { delta, position_c });
            }
            q -= 1;
        }
        p += 1;
    }
    walls.sort_by(|a, b| a.position_c.cmp(&b.position_c));
    Ok(walls)
}

/// Membership test for the candidate set of [`numerical_wall_candidates`],
/// usable when the full set is too large to materialize.
pub fn is_numerical_wall_candidate(c: &ChernVector, delta: &DivisorClass) -> Result<bool> {
    check_candidate_input(c)?;
    if lattice::primitive_normalize(delta)? != *delta {
        return Ok(false);
    }
    if !lattice::perp_meets_ample(delta)? {
        return Ok(false);
    }
    Ok(lattice::self_intersection(delta) >= candidate_bound(c))
}
