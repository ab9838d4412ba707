//! Exact linear algebra over the rationals.
//!
//! Elimination is fraction-free: rows are scaled to integers, combined by
//! cross-multiplication, and divided by their content after each step. Only
//! the final reduced echelon form is converted back to lowest-terms rationals.

mod matrix;
mod subspace;
mod system;

pub use matrix::{AffineSolution, Echelon, ExactMatrix};
pub use subspace::SubspaceBasis;
pub use system::LinearSystem;

use num_traits::Zero;
use thiserror::Error;

use crate::polyring::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `Σ coeffs[i] · vectors[i]`.
pub fn combine(coeffs: &[Scalar], vectors: &[Vec<Scalar>], dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}
