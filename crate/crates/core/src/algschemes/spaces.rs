use num_traits::{One, Zero};

use super::algebra::elementary;
use super::{
    coboundary, gen_scheme_ideal, pairs, scheme_tangent_space, split_blocks, AlgError, AlgebraPoint,
    BilinearMap, SchemeKind, Splitting,
};
use crate::exactla::{ExactMatrix, SubspaceBasis};
use crate::polyring::Scalar;

/// Tangent space to the basis-change orbit: all coboundaries of linear maps `φ`.
pub fn orbit_tangent(alg: &AlgebraPoint) -> Result<SubspaceBasis, AlgError> {
    let n = alg.dim();
    let mut vectors = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            vectors.push(coboundary(alg, &elementary(n, a, b))?.into_vec());
        }
    }
    Ok(SubspaceBasis::span(n * n * n, vectors)?)
}

/// The map `x∘y = f(x)·y + f(y)·x` for a functional `f` (a row vector).
pub fn functional_map(f: &[Scalar]) -> BilinearMap {
    let n = f.len();
    let mut m = BilinearMap::square(n);
    for i in 0..n {
        for j in 0..n {
            let mut v = vec![Scalar::zero(); n];
            v[j] += &f[i];
            v[i] += &f[j];
            for (k, x) in v.into_iter().enumerate() {
                m.set(i, j, k, x);
            }
        }
    }
    m
}

/// The space `F` of maps `x∘y = f(x)·y + f(y)·x` with `f` vanishing on `N²`.
///
/// The functionals used are the adapted coordinates along `N₁`, so the
/// returned basis has exactly `d` elements when `d > 0`.
pub fn f_space(alg: &AlgebraPoint, split: &Splitting) -> Result<SubspaceBasis, AlgError> {
    split.validate(alg)?;
    let n = split.n();
    let vectors = (0..split.d()).map(|a| functional_map(split.inverse().row(a)).into_vec()).collect();
    Ok(SubspaceBasis::span(n * n * n, vectors)?)
}

/// Maps `S²N₁ → N²` extended by zero on `N²`, as symmetric maps on `N`.
pub fn lsym_target_space(split: &Splitting) -> Result<SubspaceBasis, AlgError> {
    let (d, r, n) = (split.d(), split.r(), split.n());
    let mut vectors = Vec::with_capacity(r * d * (d + 1) / 2);
    for (a, b) in pairs(d) {
        for p in 0..r {
            let mut m = BilinearMap::square(n);
            m.set(a, b, d + p, Scalar::one());
            m.set(b, a, d + p, Scalar::one());
            vectors.push(split.map_from_adapted(&m).into_vec());
        }
    }
    Ok(SubspaceBasis::span(n * n * n, vectors)?)
}

/// Symmetric maps `S²N₁ → N₁` extended by zero on `N²`.
pub fn lsym11_space(split: &Splitting) -> Result<SubspaceBasis, AlgError> {
    let (d, n) = (split.d(), split.n());
    let mut vectors = Vec::new();
    for (a, b) in pairs(d) {
        for c in 0..d {
            let mut m = BilinearMap::square(n);
            m.set(a, b, c, Scalar::one());
            m.set(b, a, c, Scalar::one());
            vectors.push(split.map_from_adapted(&m).into_vec());
        }
    }
    Ok(SubspaceBasis::span(n * n * n, vectors)?)
}

/// Comparison of the tangent space of the associative scheme at `N` with
/// `L(S²(N/N²), N²) + T_N(GN) + L(S²N₁, N₁)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EforReport {
    pub tangent_dim: usize,
    pub lsym_dim: usize,
    pub orbit_dim: usize,
    pub f_dim: usize,
    /// `dim(L(S²(N/N²), N²) + T_N(GN))`.
    pub base_dim: usize,
    /// `dim(L(S²(N/N²), N²) + T_N(GN) + F)`.
    pub base_f_dim: usize,
    pub lsym11_dim: usize,
    /// `dim` of the full right-hand side.
    pub sum_dim: usize,
    pub base_contained: bool,
    pub f_contained: bool,
    /// Rank of the projection of the tangent space onto the `f11_1` block.
    pub f11_projection_rank: usize,
    /// The tangent space equals the full right-hand side as a subspace.
    pub equality: bool,
    /// Every `f11_1` block occurs in the tangent space, and the tangent vectors
    /// with zero `f11_1` block are exactly `L(S²(N/N²), N²)`.
    pub graded_equality: bool,
}

pub fn efor_report(alg: &AlgebraPoint, split: &Splitting) -> Result<EforReport, AlgError> {
    split.validate(alg)?;
    let n = alg.dim();
    let tangent = scheme_tangent_space(&gen_scheme_ideal(n, SchemeKind::Assoc)?, alg)?;
    let lsym = lsym_target_space(split)?;
    let orbit = orbit_tangent(alg)?;
    let f = f_space(alg, split)?;
    let l11 = lsym11_space(split)?;
    let base = lsym.sum(&orbit)?;
    let base_f = base.sum(&f)?;
    let all = base.sum(&l11)?;
    let d = split.d();
    let mut proj_rows = Vec::with_capacity(tangent.dim());
    for v in tangent.vectors() {
        let m = BilinearMap::from_vec(n, n, n, v.clone()).expect("tangent vectors have n³ coordinates");
        proj_rows.push(split_blocks(&m, split)?.f11_1.into_vec());
    }
    let f11_projection_rank =
        if proj_rows.is_empty() { 0 } else { ExactMatrix::from_rows(d * d * d, proj_rows)?.rank() };
    let zero_f11_dim = tangent.dim() - f11_projection_rank;
    let graded_equality = f11_projection_rank == l11.dim() && zero_f11_dim == lsym.dim();
    Ok(EforReport {
        tangent_dim: tangent.dim(),
        lsym_dim: lsym.dim(),
        orbit_dim: orbit.dim(),
        f_dim: f.dim(),
        base_dim: base.dim(),
        base_f_dim: base_f.dim(),
        lsym11_dim: l11.dim(),
        sum_dim: all.dim(),
        base_contained: tangent.contains_subspace(&base)?,
        f_contained: tangent.contains_subspace(&f)?,
        f11_projection_rank,
        equality: all.same_span(&tangent)?,
        graded_equality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algschemes::{algebra_invariants, coboundary};
    use crate::polyring::ints;

    fn e1e1_e2() -> AlgebraPoint {
        AlgebraPoint::from_products(2, &[(0, 0, ints(&[0, 1]))]).unwrap()
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_tangent(&AlgebraPoint::zero(3).unwrap()).unwrap().dim(), 0);
        let a = e1e1_e2();
        let o = orbit_tangent(&a).unwrap();
        assert!(o.contains(a.table().as_slice()).unwrap());
        // φ = E_11 gives e1∘e1 = 2e2
        let c = coboundary(&a, &elementary(2, 0, 0)).unwrap();
        assert!(o.contains(c.as_slice()).unwrap());
        assert_eq!(o.dim(), 2);
    }

    #[test]
    fn f_space_examples() {
        let a = e1e1_e2();
        let s = Splitting::new(&a).unwrap();
        let f = f_space(&a, &s).unwrap();
        assert_eq!(f.dim(), 1);
        let m = BilinearMap::from_vec(2, 2, 2, f.vectors()[0].clone()).unwrap();
        assert!(m.is_symmetric());
        assert_eq!(m.on_basis(0, 0), &ints(&[2, 0])[..]);
        assert_eq!(m.on_basis(0, 1), &ints(&[0, 1])[..]);
        assert!(m.on_basis(1, 1).iter().all(Zero::is_zero));

        let z = AlgebraPoint::zero(3).unwrap();
        let fz = f_space(&z, &Splitting::new(&z).unwrap()).unwrap();
        assert_eq!(fz.dim(), 3);
        assert!(fz.dim() <= algebra_invariants(&z).unwrap().annihilator.dim());
    }

    #[test]
    fn lsym_dimensions() {
        let cases = [
            (AlgebraPoint::from_products(2, &[(0, 0, ints(&[0, 1]))]).unwrap(), 1),
            (AlgebraPoint::from_products(3, &[(0, 0, ints(&[0, 0, 1])), (1, 1, ints(&[0, 0, 1]))]).unwrap(), 3),
        ];
        for (a, dim) in cases {
            assert_eq!(lsym_target_space(&Splitting::new(&a).unwrap()).unwrap().dim(), dim);
        }
    }

    #[test]
    fn efor_on_small_point() {
        let a = AlgebraPoint::from_products(3, &[(0, 0, ints(&[0, 0, 1])), (1, 1, ints(&[0, 0, 1]))]).unwrap();
        let s = Splitting::new(&a).unwrap();
        let rep = efor_report(&a, &s).unwrap();
        assert!(rep.base_contained && rep.f_contained);
        assert_eq!(rep.lsym_dim, 3);
        assert_eq!(rep.lsym11_dim, 6);
        assert_eq!(rep.tangent_dim, 9);
        assert_eq!(rep.f11_projection_rank, 6);
        assert!(rep.graded_equality);
        assert!(!rep.equality);
    }
}
