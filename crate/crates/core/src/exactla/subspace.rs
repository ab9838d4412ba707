use num_traits::{One, Zero};

use super::{AffineSolution, ExactMatrix, LinAlgError};
use crate::polyring::Scalar;

/// A linear subspace of `Q^ambient_dim`, stored as a list of independent vectors.
///
/// Spans built with [`SubspaceBasis::span`] keep the given generators (the first
/// independent ones, in order) instead of replacing them by an echelon basis,
/// so callers can recognise their own vectors in the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut e = vec![Scalar::zero(); ambient_dim];
                e[i] = Scalar::one();
                e
            })
            .collect();
        SubspaceBasis { ambient_dim, basis }
    }

    /// Caller guarantees independence.
    pub(crate) fn from_independent(ambient_dim: usize, basis: Vec<Vec<Scalar>>) -> Self {
        SubspaceBasis { ambient_dim, basis }
    }

    /// Span of `vectors`, keeping the maximal independent prefix-greedy subset.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self, LinAlgError> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(LinAlgError::Dimension { expected: ambient_dim, got: v.len() });
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = ExactMatrix::from_columns(ambient_dim, &vectors)?;
        let pivots = m.echelon().pivots;
        let mut keep = vec![false; vectors.len()];
        for p in pivots {
            keep[p] = true;
        }
        let basis = vectors.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect();
        Ok(SubspaceBasis { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn into_vectors(self) -> Vec<Vec<Scalar>> {
        self.basis
    }

    fn check(&self, v: &[Scalar]) -> Result<(), LinAlgError> {
        if v.len() != self.ambient_dim {
            return Err(LinAlgError::Dimension { expected: self.ambient_dim, got: v.len() });
        }
        Ok(())
    }

    /// Coefficients expressing `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinAlgError> {
        self.check(v)?;
        if self.basis.is_empty() {
            return Ok(super::is_zero_vec(v).then(Vec::new));
        }
        let m = ExactMatrix::from_columns(self.ambient_dim, &self.basis)?;
        Ok(match m.solve_affine(v)? {
            AffineSolution::Solved { particular, .. } => Some(particular),
            AffineSolution::Inconsistent => None,
        })
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinAlgError> {
        self.check(v)?;
        if super::is_zero_vec(v) {
            return Ok(true);
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(ExactMatrix::from_rows(self.ambient_dim, rows)?.rank() == self.dim())
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> Result<bool, LinAlgError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(LinAlgError::Dimension { expected: self.ambient_dim, got: other.ambient_dim });
        }
        if other.basis.is_empty() {
            return Ok(true);
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(ExactMatrix::from_rows(self.ambient_dim, rows)?.rank() == self.dim())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis, LinAlgError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(LinAlgError::Dimension { expected: self.ambient_dim, got: other.ambient_dim });
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        SubspaceBasis::span(self.ambient_dim, all)
    }

    pub fn same_span(&self, other: &SubspaceBasis) -> Result<bool, LinAlgError> {
        Ok(self.dim() == other.dim() && self.contains_subspace(other)?)
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &ExactMatrix) -> Result<SubspaceBasis, LinAlgError> {
        if map.cols() != self.ambient_dim {
            return Err(LinAlgError::Dimension { expected: self.ambient_dim, got: map.cols() });
        }
        let imgs = self.basis.iter().map(|v| map.mul_vec(v)).collect::<Result<Vec<_>, _>>()?;
        SubspaceBasis::span(map.rows(), imgs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::ints;

    #[test]
    fn membership_examples() {
        let s = SubspaceBasis::span(2, vec![ints(&[1, 0])]).unwrap();
        assert!(s.contains(&ints(&[2, 0])).unwrap());
        assert!(!s.contains(&ints(&[0, 1])).unwrap());
        assert!(s.contains(&ints(&[0, 0])).unwrap());
        assert!(SubspaceBasis::zero(3).contains(&ints(&[0, 0, 0])).unwrap());
        assert!(s.contains(&ints(&[1])).is_err());
    }

    #[test]
    fn span_keeps_given_generators() {
        let s = SubspaceBasis::span(3, vec![ints(&[0, 0, 0]), ints(&[0, 0, 3]), ints(&[0, 0, 6]), ints(&[1, 1, 0])])
            .unwrap();
        assert_eq!(s.vectors(), &[ints(&[0, 0, 3]), ints(&[1, 1, 0])]);
        assert_eq!(s.coordinates(&ints(&[2, 2, 3])).unwrap(), Some(ints(&[1, 2])));
        assert_eq!(s.coordinates(&ints(&[1, 0, 0])).unwrap(), None);
    }

    #[test]
    fn sums_and_containment() {
        let a = SubspaceBasis::span(3, vec![ints(&[1, 0, 0])]).unwrap();
        let b = SubspaceBasis::span(3, vec![ints(&[0, 1, 0]), ints(&[1, 1, 0])]).unwrap();
        let s = a.sum(&b).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains_subspace(&a).unwrap());
        assert!(!a.contains_subspace(&b).unwrap());
        assert!(s.same_span(&b).unwrap());
    }
}
