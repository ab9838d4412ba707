use num_traits::One;

use super::algebra::zeros;
use super::{algebra_invariants, AlgError, AlgebraPoint, BilinearMap};
use crate::exactla::{ExactMatrix, SubspaceBasis};
use crate::polyring::Scalar;

/// A decomposition `N = N₁ ⊕ N²` recorded as a basis change.
///
/// The columns of `basis` are first a basis of `N₁`, then a basis of `N²`;
/// coordinates in that basis are called adapted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    d: usize,
    r: usize,
    basis: ExactMatrix,
    inverse: ExactMatrix,
}

impl Splitting {
    /// `N²` is spanned by the first independent products `e_i e_j` (`i ≤ j`);
    /// `N₁` by the standard vectors that are not pivots of that span.
    pub fn new(alg: &AlgebraPoint) -> Result<Self, AlgError> {
        let n = alg.dim();
        let square = algebra_invariants(alg)?.square;
        let n2 = square.vectors().to_vec();
        let mut is_pivot = vec![false; n];
        if !n2.is_empty() {
            for p in ExactMatrix::from_rows(n, n2.clone())?.echelon().pivots {
                is_pivot[p] = true;
            }
        }
        let mut cols: Vec<Vec<Scalar>> = (0..n)
            .filter(|&k| !is_pivot[k])
            .map(|k| {
                let mut e = zeros(n);
                e[k] = Scalar::one();
                e
            })
            .collect();
        let d = cols.len();
        cols.extend(n2);
        Self::from_columns(d, cols)
    }

    /// Splitting from explicit bases: `n1` then `n2`.
    pub fn from_bases(n1: Vec<Vec<Scalar>>, n2: Vec<Vec<Scalar>>) -> Result<Self, AlgError> {
        let d = n1.len();
        let mut cols = n1;
        cols.extend(n2);
        Self::from_columns(d, cols)
    }

    fn from_columns(d: usize, cols: Vec<Vec<Scalar>>) -> Result<Self, AlgError> {
        let n = cols.len();
        let basis = ExactMatrix::from_columns(n, &cols)?;
        let inverse = basis
            .inverse()
            .map_err(|_| AlgError::SplittingMismatch("basis vectors are dependent".into()))?;
        Ok(Splitting { d, r: n - d, basis, inverse })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.d + self.r
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn inverse(&self) -> &ExactMatrix {
        &self.inverse
    }

    pub fn n1_basis(&self) -> Vec<Vec<Scalar>> {
        (0..self.d).map(|a| self.basis.column(a)).collect()
    }

    pub fn n2_basis(&self) -> Vec<Vec<Scalar>> {
        (self.d..self.n()).map(|a| self.basis.column(a)).collect()
    }

    pub fn to_adapted(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.inverse.mul_vec(v).expect("vector length matches splitting")
    }

    pub fn from_adapted(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.basis.mul_vec(v).expect("vector length matches splitting")
    }

    pub fn map_to_adapted(&self, m: &BilinearMap) -> BilinearMap {
        m.change_basis(&self.basis, &self.inverse)
    }

    pub fn map_from_adapted(&self, m: &BilinearMap) -> BilinearMap {
        m.change_basis(&self.inverse, &self.basis)
    }

    pub fn adapted_algebra(&self, alg: &AlgebraPoint) -> Result<AlgebraPoint, AlgError> {
        AlgebraPoint::new(self.map_to_adapted(alg.table()))
    }

    /// Checks that the second summand is exactly the square of `alg`.
    pub fn validate(&self, alg: &AlgebraPoint) -> Result<(), AlgError> {
        if alg.dim() != self.n() {
            return Err(AlgError::SplittingMismatch(format!(
                "splitting has dimension {}, algebra {}",
                self.n(),
                alg.dim()
            )));
        }
        let square = algebra_invariants(alg)?.square;
        let n2 = SubspaceBasis::span(self.n(), self.n2_basis())?;
        if !square.same_span(&n2)? {
            return Err(AlgError::SplittingMismatch("second summand differs from N²".into()));
        }
        Ok(())
    }

    /// The multiplication `μ : S²N₁ → N²` in adapted coordinates, as a `(d, d, r)` map.
    pub fn mu(&self, alg: &AlgebraPoint) -> BilinearMap {
        let adapted = self.map_to_adapted(alg.table());
        let mut mu = BilinearMap::zero(self.d, self.d, self.r);
        for a in 0..self.d {
            for b in 0..self.d {
                for p in 0..self.r {
                    mu.set(a, b, p, adapted.get(a, b, self.d + p).clone());
                }
            }
        }
        mu
    }
}

/// Blocks `f_ij^k` of a symmetric map in adapted coordinates.
///
/// The suffix is the target summand: `f12_2 : N₁ ⊗ N² → N²` and so on. The
/// blocks with first argument in `N²` and second in `N₁` are the transposes of
/// the `12` blocks and are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMapBlocks {
    pub f11_1: BilinearMap,
    pub f11_2: BilinearMap,
    pub f12_1: BilinearMap,
    pub f12_2: BilinearMap,
    pub f22_1: BilinearMap,
    pub f22_2: BilinearMap,
}

impl SymMapBlocks {
    /// `f12_1 = f22_1 = f22_2 = 0`.
    pub fn generic_constraints_hold(&self) -> bool {
        self.f12_1.is_zero() && self.f22_1.is_zero() && self.f22_2.is_zero()
    }
}

/// Splits a symmetric map on `N` into its blocks.
pub fn split_blocks(m: &BilinearMap, split: &Splitting) -> Result<SymMapBlocks, AlgError> {
    let n = split.n();
    if (m.left(), m.right(), m.out()) != (n, n, n) {
        return Err(AlgError::Shape { expected: (n, n, n), got: (m.left(), m.right(), m.out()) });
    }
    if !m.is_symmetric() {
        return Err(AlgError::Precondition("map is not symmetric".into()));
    }
    let a = split.map_to_adapted(m);
    let (d, r) = (split.d, split.r);
    let block = |lo: (usize, usize), sizes: (usize, usize), tgt: usize, tsize: usize| {
        let mut b = BilinearMap::zero(sizes.0, sizes.1, tsize);
        for x in 0..sizes.0 {
            for y in 0..sizes.1 {
                for z in 0..tsize {
                    b.set(x, y, z, a.get(lo.0 + x, lo.1 + y, tgt + z).clone());
                }
            }
        }
        b
    };
    Ok(SymMapBlocks {
        f11_1: block((0, 0), (d, d), 0, d),
        f11_2: block((0, 0), (d, d), d, r),
        f12_1: block((0, d), (d, r), 0, d),
        f12_2: block((0, d), (d, r), d, r),
        f22_1: block((d, d), (r, r), 0, d),
        f22_2: block((d, d), (r, r), d, r),
    })
}

/// Inverse of [`split_blocks`].
pub fn reassemble(blocks: &SymMapBlocks, split: &Splitting) -> BilinearMap {
    let (d, r) = (split.d, split.r);
    let mut a = BilinearMap::square(d + r);
    let mut put = |b: &BilinearMap, lo: (usize, usize), tgt: usize| {
        for x in 0..b.left() {
            for y in 0..b.right() {
                for z in 0..b.out() {
                    let v = b.get(x, y, z).clone();
                    a.set(lo.0 + x, lo.1 + y, tgt + z, v.clone());
                    a.set(lo.1 + y, lo.0 + x, tgt + z, v);
                }
            }
        }
    };
    put(&blocks.f11_1, (0, 0), 0);
    put(&blocks.f11_2, (0, 0), d);
    put(&blocks.f12_1, (0, d), 0);
    put(&blocks.f12_2, (0, d), d);
    put(&blocks.f22_1, (d, d), 0);
    put(&blocks.f22_2, (d, d), d);
    split.map_from_adapted(&a)
}
