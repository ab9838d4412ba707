use std::collections::BTreeMap;

use num_traits::Zero;

use super::{AffineSolution, ExactMatrix, LinAlgError};
use crate::polyring::Scalar;

/// Sparse builder for `Ax = b`, one equation at a time.
///
/// Equations are generated by instantiating identities over basis vectors, so
/// many are redundant or identically zero; those are kept and left to the rank
/// computation, except that all-zero homogeneous rows are dropped.
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    unknowns: usize,
    rows: Vec<(BTreeMap<usize, Scalar>, Scalar)>,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem { unknowns, rows: Vec::new() }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `Σ coeff·x_idx = rhs`; repeated indices accumulate.
    pub fn push<I>(&mut self, lhs: I, rhs: Scalar)
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in lhs {
            assert!(i < self.unknowns, "unknown index {i} out of range");
            *row.entry(i).or_insert_with(Scalar::zero) += c;
        }
        row.retain(|_, c| !c.is_zero());
        if row.is_empty() && rhs.is_zero() {
            return;
        }
        self.rows.push((row, rhs));
    }

    pub fn matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.rows.len(), self.unknowns);
        for (i, (row, _)) in self.rows.iter().enumerate() {
            for (&j, c) in row {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn rhs(&self) -> Vec<Scalar> {
        self.rows.iter().map(|(_, b)| b.clone()).collect()
    }

    pub fn solve(&self) -> Result<AffineSolution, LinAlgError> {
        self.matrix().solve_affine(&self.rhs())
    }

    /// Whether `x` satisfies every equation exactly.
    pub fn is_satisfied_by(&self, x: &[Scalar]) -> bool {
        self.rows.iter().all(|(row, b)| {
            let lhs = row.iter().fold(Scalar::zero(), |acc, (&j, c)| acc + c * &x[j]);
            lhs == *b
        })
    }
}
