//! Exact enumeration of slope-stability chambers for spherical classes on a
//! rank-two hyperbolic intersection lattice of elliptic-fibration type.
//!
//! Everything here is exact: divisor classes and Mukai-type vectors carry
//! arbitrary-precision integer coefficients, chamber walls are solved as
//! rational intervals (never scanned or approximated), and the only place a
//! floating-point number appears is the `ratio` report column of
//! [`bounds::StatsRow`], which is informational.
//!
//! Module map:
//!
//! * [`arith`] — small number-theoretic toolkit (φ, τ, canonical modular
//!   inverses, continued fractions, Fibonacci, the 2x² − y² = 1 recurrence).
//! * [`lattice`] — Néron–Severi-style lattices with a fixed Gram matrix,
//!   divisor classes, intersection products, primitivity, ample-cone tests.
//! * [`mukai`] — Mukai vectors, the pairing, sphericality, spherical twists,
//!   and the (slope, shift) parametrization of spherical vectors.
//! * [`walls`] — destabilizer enumeration and wall-and-chamber counting; the
//!   heart of the crate.
//! * [`bounds`] — aggregate statistics and the counting identities / upper
//!   bounds that tie wall counts to divisor-function sums.
//! * [`pell`] — a certified infinite family of slope-stable spherical bundles
//!   on a rank-three lattice indexed by Pell-equation solutions.
//! * [`checks`] — named verification suites shared by the CLI and the
//!   acceptance tests.

use num_bigint::BigInt;

pub mod arith;
pub mod bounds;
pub mod checks;
pub mod lattice;
pub mod mukai;
pub mod pell;
pub mod reference;
pub mod walls;

pub use arith::Rational;
pub use lattice::{DivisorClass, NSLattice};
pub use mukai::{ChernVector, MukaiVector, ParamCoords};
pub use walls::{CountReport, Destabilizer, Wall};

/// Crate-wide error type. Every fallible public operation returns one of
/// these; panics are reserved for internal invariant violations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("divisor classes live on different lattices")]
    LatticeMismatch,
    #[error("the zero class is not allowed here")]
    ZeroClass,
    #[error("operation requires the elliptic-fibration lattice")]
    ExpectedElliptic,
    #[error("operation requires the Pell-family lattice")]
    ExpectedPell,
    #[error("{0} has no inverse modulo {1}")]
    NotInvertible(BigInt, BigInt),
    #[error("vector is not spherical (rank {rk}, self-pairing {pairing})")]
    NotSpherical { rk: BigInt, pairing: BigInt },
    #[error("self-intersection {0} is odd, so the class is not of line-bundle type")]
    OddSquare(BigInt),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
