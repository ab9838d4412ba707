//! Exact polynomial and truncated power-series arithmetic.
//!
//! Everything here works over the rationals. [`MultiPoly`] is a sparse
//! multivariate polynomial, [`Jet`] a dense univariate series truncated at a
//! fixed degree, and [`CurveGerm`] a tuple of jets describing a parameterized
//! curve `G(t) = p + t·v₁ + t²·v₂ + …`.

mod jet;
mod parse;
mod poly;

pub use jet::{CurveGerm, Jet, OrderResult, DEFAULT_TRUNC};
pub use parse::{parse_poly, parse_scalar, VarNames};
pub use poly::{Monomial, MultiPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Shorthand for an integer-valued [`Scalar`].
pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts a slice of integers into scalars.
pub fn ints(vs: &[i64]) -> Vec<Scalar> {
    vs.iter().map(|&v| int(v)).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("jet truncation mismatch: {left} vs {right}")]
    TruncMismatch { left: usize, right: usize },
    #[error("inner series must have zero constant term")]
    NonzeroConstant,
    #[error("curve germ needs at least one component")]
    EmptyGerm,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}
