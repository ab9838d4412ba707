use num_traits::{One, Zero};

use super::{AlgError, BilinearMap};
use crate::exactla::{is_zero_vec, ExactMatrix, SubspaceBasis};
use crate::polyring::Scalar;

/// A commutative multiplication on `Qⁿ`, `e_i·e_j = Σ c_ij^k e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPoint {
    table: BilinearMap,
}

impl AlgebraPoint {
    pub fn new(table: BilinearMap) -> Result<Self, AlgError> {
        let n = table.left();
        if n == 0 {
            return Err(AlgError::ZeroDimension);
        }
        if table.right() != n || table.out() != n {
            return Err(AlgError::Shape { expected: (n, n, n), got: (table.left(), table.right(), table.out()) });
        }
        for i in 0..n {
            for j in 0..i {
                if table.on_basis(i, j) != table.on_basis(j, i) {
                    return Err(AlgError::NotSymmetric { i: j + 1, j: i + 1 });
                }
            }
        }
        Ok(AlgebraPoint { table })
    }

    pub fn zero(n: usize) -> Result<Self, AlgError> {
        Self::new(BilinearMap::square(n))
    }

    /// Builds the table from products `(i, j, e_i·e_j)`, 0-based; other products are zero.
    pub fn from_products(n: usize, products: &[(usize, usize, Vec<Scalar>)]) -> Result<Self, AlgError> {
        let mut table = BilinearMap::square(n);
        for (i, j, v) in products {
            if v.len() != n || *i >= n || *j >= n {
                return Err(AlgError::Shape { expected: (n, n, n), got: (*i + 1, *j + 1, v.len()) });
            }
            table.set_sym(*i, *j, v);
        }
        Self::new(table)
    }

    /// The point of affine `n³`-space with coordinates `c_ij^k`.
    pub fn from_point(n: usize, coords: Vec<Scalar>) -> Result<Self, AlgError> {
        let len = coords.len();
        let table = BilinearMap::from_vec(n, n, n, coords)
            .ok_or(AlgError::Shape { expected: (n, n, n), got: (len, 1, 1) })?;
        Self::new(table)
    }

    pub fn dim(&self) -> usize {
        self.table.left()
    }

    pub fn table(&self) -> &BilinearMap {
        &self.table
    }

    pub fn point(&self) -> Vec<Scalar> {
        self.table.as_slice().to_vec()
    }

    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        self.table.on_basis(i, j)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.table.apply(x, y)
    }

    /// `(e_i e_j) e_k − e_i (e_j e_k)` for all triples, as a trilinear table.
    pub fn associator(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.table.apply_right_basis(self.product(i, j), k);
                    let right = self.table.apply_left_basis(i, self.product(j, k));
                    out.push(left.iter().zip(&right).map(|(a, b)| a - b).collect());
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        self.associator().iter().all(|v| is_zero_vec(v))
    }

    /// Whether every product of three elements vanishes.
    pub fn is_nilpotent3(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| is_zero_vec(&self.table.apply_right_basis(self.product(i, j), k))))
        })
    }

    /// The same multiplication in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &ExactMatrix) -> Result<AlgebraPoint, AlgError> {
        let p_inv = p.inverse()?;
        Self::new(self.table.change_basis(p, &p_inv))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraInvariants {
    pub square: SubspaceBasis,
    pub annihilator: SubspaceBasis,
}

impl AlgebraInvariants {
    /// `dim N² ≤ r ≤ dim Ann N`.
    pub fn in_anr(&self, r: usize) -> bool {
        self.square.dim() <= r && r <= self.annihilator.dim()
    }

    /// `dim N² = r = dim Ann N`.
    pub fn in_unr(&self, r: usize) -> bool {
        self.square.dim() == r && r == self.annihilator.dim()
    }
}

/// The square `N²` and the annihilator of `N`.
pub fn algebra_invariants(alg: &AlgebraPoint) -> Result<AlgebraInvariants, AlgError> {
    let n = alg.dim();
    let products = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| alg.product(i, j).to_vec()).collect();
    let square = SubspaceBasis::span(n, products)?;
    // x ∈ Ann iff Σ_i x_i c_ij^k = 0 for every (j, k)
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|i| alg.table().get(i, j, k).clone()).collect());
        }
    }
    let annihilator = ExactMatrix::from_rows(n, rows)?.kernel();
    Ok(AlgebraInvariants { square, annihilator })
}

/// The symmetric map `x∘y = x·φ(y) − φ(x·y) + y·φ(x)`; `phi` acts on column vectors.
pub fn coboundary(alg: &AlgebraPoint, phi: &ExactMatrix) -> Result<BilinearMap, AlgError> {
    let n = alg.dim();
    if phi.rows() != n || phi.cols() != n {
        return Err(AlgError::Shape { expected: (n, n, 1), got: (phi.rows(), phi.cols(), 1) });
    }
    let images: Vec<Vec<Scalar>> = (0..n).map(|j| phi.column(j)).collect();
    let mut out = BilinearMap::square(n);
    for i in 0..n {
        for j in i..n {
            let a = alg.table().apply_left_basis(i, &images[j]);
            let b = phi.mul_vec(alg.product(i, j))?;
            let c = alg.table().apply_left_basis(j, &images[i]);
            let v: Vec<Scalar> = (0..n).map(|k| &a[k] - &b[k] + &c[k]).collect();
            out.set_sym(i, j, &v);
        }
    }
    Ok(out)
}

/// Elementary matrix `E_ab` with a single 1 in row `a`, column `b`.
pub(crate) fn elementary(n: usize, a: usize, b: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    m.set(a, b, Scalar::one());
    m
}

pub(crate) fn zeros(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::ints;

    fn e1e1_e2() -> AlgebraPoint {
        AlgebraPoint::from_products(2, &[(0, 0, ints(&[0, 1]))]).unwrap()
    }

    #[test]
    fn invariants_of_small_algebras() {
        let inv = algebra_invariants(&e1e1_e2()).unwrap();
        assert_eq!(inv.square.vectors(), &[ints(&[0, 1])]);
        assert!(inv.annihilator.same_span(&SubspaceBasis::span(2, vec![ints(&[0, 1])]).unwrap()).unwrap());
        assert!(inv.in_anr(1));
        assert!(!inv.in_anr(0) && !inv.in_anr(2));

        let zero = algebra_invariants(&AlgebraPoint::zero(3).unwrap()).unwrap();
        assert_eq!(zero.square.dim(), 0);
        assert_eq!(zero.annihilator.dim(), 3);
        assert!((0..=3).all(|r| zero.in_anr(r)));

        let idem = AlgebraPoint::from_products(1, &[(0, 0, ints(&[1]))]).unwrap();
        let inv = algebra_invariants(&idem).unwrap();
        assert_eq!((inv.square.dim(), inv.annihilator.dim()), (1, 0));
        assert!(!inv.in_anr(0) && !inv.in_anr(1));
    }

    #[test]
    fn rejects_asymmetric_tables() {
        let mut t = BilinearMap::square(2);
        t.set(0, 1, 0, crate::polyring::int(1));
        assert_eq!(AlgebraPoint::new(t), Err(AlgError::NotSymmetric { i: 1, j: 2 }));
        assert_eq!(AlgebraPoint::zero(0), Err(AlgError::ZeroDimension));
    }

    #[test]
    fn associativity_and_nilpotency() {
        let a = e1e1_e2();
        assert!(a.is_associative() && a.is_nilpotent3());
        let idem = AlgebraPoint::from_products(1, &[(0, 0, ints(&[1]))]).unwrap();
        assert!(idem.is_associative() && !idem.is_nilpotent3());
        // e1e1 = e2, e2e2 = e1 is commutative but not associative
        let bad = AlgebraPoint::from_products(2, &[(0, 0, ints(&[0, 1])), (1, 1, ints(&[1, 0]))]).unwrap();
        assert!(!bad.is_associative());
    }

    #[test]
    fn identity_coboundary_is_the_table() {
        let a = e1e1_e2();
        let m = coboundary(&a, &ExactMatrix::identity(2)).unwrap();
        assert_eq!(&m, a.table());
        let z = AlgebraPoint::zero(2).unwrap();
        assert!(coboundary(&z, &elementary(2, 0, 1)).unwrap().is_zero());
    }

    #[test]
    fn change_basis_round_trip() {
        let a = e1e1_e2();
        let p = ExactMatrix::from_rows(2, vec![ints(&[1, 1]), ints(&[0, 2])]).unwrap();
        let b = a.change_basis(&p).unwrap();
        assert!(b.is_nilpotent3());
        let back = b.change_basis(&p.inverse().unwrap()).unwrap();
        assert_eq!(back, a);
    }
}
