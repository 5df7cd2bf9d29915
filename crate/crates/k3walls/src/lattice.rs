//! Integral lattices with a fixed Gram matrix and the divisor classes living
//! on them.
//!
//! Two presets matter in practice:
//!
//! * [`NSLattice::elliptic`] — rank two, basis (s, e) with s² = −2,
//!   s·e = 1, e² = 0. The nef cone is spanned by e and 2e + s, the effective
//!   cone by e and s; the ample rays are parametrized as s + c·e for c > 2.
//! * [`NSLattice::pell`] — rank three, diagonal Gram matrix (12, −6, −30),
//!   basis internally labelled (h, u, w); reports relabel them (h, e, f).
//!
//! All coefficients are arbitrary-precision integers; nothing here may
//! overflow.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{invalid, Error, Result};

/// A free abelian group of finite rank with an integral symmetric pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSLattice {
    gram: Vec<Vec<BigInt>>,
    labels: Vec<String>,
}

impl NSLattice {
    /// Build a lattice from a symmetric Gram matrix and basis labels.
    pub fn new(gram: Vec<Vec<BigInt>>, labels: Vec<String>) -> Result<Arc<Self>> {
        let rank = gram.len();
        if rank == 0 {
            return invalid("lattice rank must be positive");
        }
        if gram.iter().any(|row| row.len() != rank) {
            return invalid("Gram matrix must be square");
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, value) in row.iter().enumerate().take(i) {
                if value != &gram[j][i] {
                    return invalid("Gram matrix must be symmetric");
                }
            }
        }
        if labels.len() != rank {
            return invalid("need one basis label per row of the Gram matrix");
        }
        Ok(Arc::new(NSLattice { gram, labels }))
    }

    /// The rank-two elliptic-fibration lattice, basis (s, e):
    /// s² = −2, s·e = 1, e² = 0.
    pub fn elliptic() -> Arc<Self> {
        static CACHE: OnceLock<Arc<NSLattice>> = OnceLock::new();
        CACHE
            .get_or_init(|| {
                NSLattice::new(
                    vec![
                        vec![BigInt::from(-2), BigInt::from(1)],
                        vec![BigInt::from(1), BigInt::from(0)],
                    ],
                    vec!["s".into(), "e".into()],
                )
                .expect("elliptic preset is valid")
            })
            .clone()
    }

    /// The rank-three diagonal lattice (12, −6, −30), basis (h, u, w).
    pub fn pell() -> Arc<Self> {
        static CACHE: OnceLock<Arc<NSLattice>> = OnceLock::new();
        CACHE
            .get_or_init(|| {
                NSLattice::new(
                    vec![
                        vec![BigInt::from(12), BigInt::from(0), BigInt::from(0)],
                        vec![BigInt::from(0), BigInt::from(-6), BigInt::from(0)],
                        vec![BigInt::from(0), BigInt::from(0), BigInt::from(-30)],
                    ],
                    vec!["h".into(), "u".into(), "w".into()],
                )
                .expect("Pell preset is valid")
            })
            .clone()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_elliptic(&self) -> bool {
        *self == *NSLattice::elliptic()
    }

    pub fn is_pell(&self) -> bool {
        *self == *NSLattice::pell()
    }

    fn pairing(&self, a: &[BigInt], b: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                total += ai * bj * &self.gram[i][j];
            }
        }
        total
    }
}

/// An element of an [`NSLattice`], stored as coefficients over its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    lattice: Arc<NSLattice>,
    coeffs: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(lattice: Arc<NSLattice>, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != lattice.rank() {
            return invalid(format!(
                "expected {} coefficients, got {}",
                lattice.rank(),
                coeffs.len()
            ));
        }
        Ok(DivisorClass { lattice, coeffs })
    }

    /// Convenience constructor on the elliptic lattice: p·s + q·e.
    pub fn elliptic(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        DivisorClass {
            lattice: NSLattice::elliptic(),
            coeffs: vec![p.into(), q.into()],
        }
    }

    /// Convenience constructor on the Pell lattice: a·h + b·u + c·w.
    pub fn pell(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        DivisorClass {
            lattice: NSLattice::pell(),
            coeffs: vec![a.into(), b.into(), c.into()],
        }
    }

    pub fn zero(lattice: Arc<NSLattice>) -> Self {
        let coeffs = vec![BigInt::zero(); lattice.rank()];
        DivisorClass { lattice, coeffs }
    }

    pub fn lattice(&self) -> &Arc<NSLattice> {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn same_lattice(&self, other: &DivisorClass) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice
    }

    fn expect_same_lattice(&self, other: &DivisorClass) -> Result<()> {
        if self.same_lattice(other) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }
}

/// Intersection product D1 · D2 through the Gram matrix.
pub fn intersect(d1: &DivisorClass, d2: &DivisorClass) -> Result<BigInt> {
    d1.expect_same_lattice(d2)?;
    Ok(d1.lattice.pairing(&d1.coeffs, &d2.coeffs))
}

/// Self-intersection D².
pub fn self_intersection(d: &DivisorClass) -> BigInt {
    d.lattice.pairing(&d.coeffs, &d.coeffs)
}

/// The primitive representative of the ray through D: coefficients divided by
/// their gcd, sign fixed so the first nonzero coefficient is positive.
/// The zero class is rejected.
pub fn primitive_normalize(d: &DivisorClass) -> Result<DivisorClass> {
    if d.is_zero() {
        return Err(Error::ZeroClass);
    }
    let mut g = BigInt::zero();
    for c in &d.coeffs {
        g = g.gcd(c);
    }
    let first_nonzero_negative = d
        .coeffs
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(Signed::is_negative);
    if first_nonzero_negative {
        g = -g;
    }
    let coeffs = d.coeffs.iter().map(|c| c / &g).collect();
    Ok(DivisorClass {
        lattice: d.lattice.clone(),
        coeffs,
    })
}

/// Does D^⊥ meet the open ample cone of the elliptic lattice?
///
/// The nef cone is spanned by g1 = e and g2 = 2e + s, so D^⊥ crosses the
/// interior exactly when D·g1 and D·g2 have strictly opposite signs. For
/// D = p·s + q·e these products are p and q.
pub fn perp_meets_ample(d: &DivisorClass) -> Result<bool> {
    if !d.lattice.is_elliptic() {
        return Err(Error::ExpectedElliptic);
    }
    if d.is_zero() {
        return Err(Error::ZeroClass);
    }
    let g1 = vec![BigInt::zero(), BigInt::from(1)]; // e
    let g2 = vec![BigInt::from(1), BigInt::from(2)]; // 2e + s
    let a = d.lattice.pairing(&d.coeffs, &g1);
    let b = d.lattice.pairing(&d.coeffs, &g2);
    Ok((a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive()))
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, label) in self.coeffs.iter().zip(self.lattice.labels()) {
            if c.is_zero() {
                continue;
            }
            if first {
                if *c == BigInt::from(-1) {
                    write!(f, "-")?;
                } else if *c != BigInt::from(1) {
                    write!(f, "{c}")?;
                }
            } else if c.is_negative() {
                if *c == BigInt::from(-1) {
                    write!(f, "-")?;
                } else {
                    write!(f, "{c}")?;
                }
            } else {
                write!(f, "+")?;
                if *c != BigInt::from(1) {
                    write!(f, "{c}")?;
                }
            }
            write!(f, "{label}")?;
            first = false;
        }
        Ok(())
    }
}

// Component-wise group operations. These panic on a lattice mismatch — they
// are conveniences for code that already knows both sides agree; fallible
// checking goes through `intersect` and friends.

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.expect_same_lattice(rhs)
            .expect("lattice mismatch in +");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        DivisorClass {
            lattice: self.lattice.clone(),
            coeffs,
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.expect_same_lattice(rhs)
            .expect("lattice mismatch in -");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        DivisorClass {
            lattice: self.lattice.clone(),
            coeffs,
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        DivisorClass {
            lattice: self.lattice.clone(),
            coeffs,
        }
    }
}

impl Mul<&BigInt> for &DivisorClass {
    type Output = DivisorClass;
    fn mul(self, rhs: &BigInt) -> DivisorClass {
        let coeffs = self.coeffs.iter().map(|a| a * rhs).collect();
        DivisorClass {
            lattice: self.lattice.clone(),
            coeffs,
        }
    }
}
