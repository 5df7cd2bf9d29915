//! Mukai-type vectors (rk, c1, s) over an [`NSLattice`], their pairing,
//! sphericality, spherical twists, and — on the elliptic lattice — the exact
//! bijection between spherical vectors and (slope, shift) parameters.
//!
//! The parametrization sends (n/m, k), with n/m reduced and m ≥ 1, to
//!
//! ```text
//! v(n/m, k) = (m, n·s + b·e, (-n² + n·b + 1)/m),   b = k·m + n - inv_m(n),
//! ```
//!
//! where `inv_m(n)` is the canonical inverse of n modulo m in [0, m)
//! (0 when m = 1). The division is always exact; this module asserts it.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{mod_inverse_canonical, Rational};
use crate::lattice::{self, DivisorClass};
use crate::{invalid, Error, Result};

/// A Mukai-type vector (rk, c1, s). The pairing is
/// ⟨(r1, l1, s1), (r2, l2, s2)⟩ = l1·l2 − r1·s2 − r2·s1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MukaiVector {
    rk: BigInt,
    c1: DivisorClass,
    s: BigInt,
}

impl MukaiVector {
    pub fn new(rk: impl Into<BigInt>, c1: DivisorClass, s: impl Into<BigInt>) -> Self {
        MukaiVector {
            rk: rk.into(),
            c1,
            s: s.into(),
        }
    }

    pub fn rk(&self) -> &BigInt {
        &self.rk
    }

    pub fn c1(&self) -> &DivisorClass {
        &self.c1
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.rk, self.c1, self.s)
    }
}

impl Add for &MukaiVector {
    type Output = MukaiVector;
    fn add(self, rhs: &MukaiVector) -> MukaiVector {
        MukaiVector {
            rk: &self.rk + &rhs.rk,
            c1: &self.c1 + &rhs.c1,
            s: &self.s + &rhs.s,
        }
    }
}

/// A Chern-character vector (rk, ch1, ch2); related to the Mukai form by
/// s = ch2 + rk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernVector {
    rk: BigInt,
    ch1: DivisorClass,
    ch2: BigInt,
}

impl ChernVector {
    pub fn new(rk: impl Into<BigInt>, ch1: DivisorClass, ch2: impl Into<BigInt>) -> Self {
        ChernVector {
            rk: rk.into(),
            ch1,
            ch2: ch2.into(),
        }
    }

    pub fn rk(&self) -> &BigInt {
        &self.rk
    }

    pub fn ch1(&self) -> &DivisorClass {
        &self.ch1
    }

    pub fn ch2(&self) -> &BigInt {
        &self.ch2
    }
}

/// Parameters (n/m, k) for a spherical vector on the elliptic lattice:
/// a reduced slope n/m with m ≥ 1 and an integer shift k.
///
/// The constructor reduces the fraction and normalizes the denominator to be
/// positive, so `gcd(n, m) = 1` always holds. For m = 1 any integer n is
/// permitted — rank-one vectors with nonzero s-coefficient need it — while
/// slope-level canonicalization (integers ↦ n = 0) happens where slopes are
/// consumed, in [`crate::walls::count_h`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamCoords {
    n: BigInt,
    m: BigInt,
    k: BigInt,
}

impl ParamCoords {
    pub fn new(n: impl Into<BigInt>, m: impl Into<BigInt>, k: impl Into<BigInt>) -> Result<Self> {
        let mut n = n.into();
        let mut m = m.into();
        let k = k.into();
        if m.is_zero() {
            return invalid("slope denominator must be nonzero");
        }
        if m.is_negative() {
            n = -n;
            m = -m;
        }
        let g = n.gcd(&m);
        Ok(ParamCoords {
            n: &n / &g,
            m: &m / &g,
            k,
        })
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn slope(&self) -> Rational {
        Rational::new(self.n.clone(), self.m.clone())
    }
}

impl fmt::Display for ParamCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{}, k={})", self.n, self.m, self.k)
    }
}

/// The Mukai pairing ⟨v, w⟩ = c1(v)·c1(w) − rk(v)·s(w) − rk(w)·s(v).
pub fn mukai_pairing(v: &MukaiVector, w: &MukaiVector) -> Result<BigInt> {
    let l = lattice::intersect(&v.c1, &w.c1)?;
    Ok(l - &v.rk * &w.s - &w.rk * &v.s)
}

/// Spherical means positive rank and self-pairing −2.
pub fn is_spherical(v: &MukaiVector) -> bool {
    v.rk.is_positive()
        && mukai_pairing(v, v)
            .map(|p| p == BigInt::from(-2))
            .unwrap_or(false)
}

/// Mukai vector of a line bundle with first Chern class D:
/// (1, D, D²/2 + 1). D² must be even.
pub fn line_bundle_vector(d: &DivisorClass) -> Result<MukaiVector> {
    let sq = lattice::self_intersection(d);
    if sq.is_odd() {
        return Err(Error::OddSquare(sq));
    }
    let s = &sq / 2 + 1;
    Ok(MukaiVector {
        rk: BigInt::one(),
        c1: d.clone(),
        s,
    })
}

/// Reflection of v in the spherical vector w: v ↦ v + ⟨w, v⟩·w.
/// Errors when w is not spherical.
pub fn twist_reflect(w: &MukaiVector, v: &MukaiVector) -> Result<MukaiVector> {
    if !is_spherical(w) {
        return Err(Error::NotSpherical {
            rk: w.rk.clone(),
            pairing: mukai_pairing(w, w).unwrap_or_else(|_| BigInt::zero()),
        });
    }
    let t = mukai_pairing(w, v)?;
    Ok(MukaiVector {
        rk: &v.rk + &t * &w.rk,
        c1: &v.c1 + &(&w.c1 * &t),
        s: &v.s + &t * &w.s,
    })
}

/// The spherical vector v(n/m, k) on the elliptic lattice.
pub fn from_param(p: &ParamCoords) -> MukaiVector {
    let inv = mod_inverse_canonical(&p.n, &p.m).expect("ParamCoords keeps gcd(n, m) = 1");
    let b = &p.k * &p.m + &p.n - inv;
    let num: BigInt = -(&p.n * &p.n) + &p.n * &b + 1;
    let (s, rem) = num.div_rem(&p.m);
    assert!(rem.is_zero(), "parametrization division must be exact");
    MukaiVector {
        rk: p.m.clone(),
        c1: DivisorClass::elliptic(p.n.clone(), b),
        s,
    }
}

/// Inverse of [`from_param`]: recover (n/m, k) from a spherical vector on the
/// elliptic lattice. Errors on non-spherical input or the wrong lattice.
pub fn to_param(v: &MukaiVector) -> Result<ParamCoords> {
    if !v.c1.lattice().is_elliptic() {
        return Err(Error::ExpectedElliptic);
    }
    if !is_spherical(v) {
        return Err(Error::NotSpherical {
            rk: v.rk.clone(),
            pairing: mukai_pairing(v, v).unwrap_or_else(|_| BigInt::zero()),
        });
    }
    let m = v.rk.clone();
    let n = v.c1.coeff(0).clone();
    let b = v.c1.coeff(1).clone();
    // Sphericality forces m | (-n² + n·b + 1), hence gcd(n, m) = 1.
    let inv = mod_inverse_canonical(&n, &m)?;
    let (k, rem) = (&b - &n + inv).div_rem(&m);
    assert!(
        rem.is_zero(),
        "shift recovery must be exact on spherical input"
    );
    Ok(ParamCoords { n, m, k })
}

/// Mukai form → Chern form: ch2 = s − rk.
pub fn chern_of(v: &MukaiVector) -> ChernVector {
    ChernVector {
        rk: v.rk.clone(),
        ch1: v.c1.clone(),
        ch2: &v.s - &v.rk,
    }
}

/// Chern form → Mukai form: s = ch2 + rk.
pub fn mukai_of(c: &ChernVector) -> MukaiVector {
    MukaiVector {
        rk: c.rk.clone(),
        c1: c.ch1.clone(),
        s: &c.ch2 + &c.rk,
    }
}

/// Discriminant Δ = ch1² − 2·rk·ch2.
pub fn discriminant(c: &ChernVector) -> BigInt {
    lattice::self_intersection(&c.ch1) - 2 * &c.rk * &c.ch2
}

/// Slope μ_H = (H·ch1)/rk. Requires rk > 0.
pub fn slope(c: &ChernVector, h: &DivisorClass) -> Result<Rational> {
    if !c.rk.is_positive() {
        return invalid("slope requires positive rank");
    }
    let num = lattice::intersect(h, &c.ch1)?;
    Ok(Rational::new(num, c.rk.clone()))
}
