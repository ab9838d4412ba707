#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tancone::algschemes::{AlgebraPoint, BilinearMap};
use tancone::conecurve::IdealPresentation;
use tancone::exactla::{ExactMatrix, SubspaceBasis};
use tancone::polyring::{int, CurveGerm, Monomial, MultiPoly, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn small(rng: &mut ChaCha8Rng, bound: i64) -> Scalar {
    int(rng.gen_range(-bound..=bound))
}

pub fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> Scalar {
    loop {
        let c = small(rng, bound);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Scalar> {
    (0..n).map(|_| small(rng, bound)).collect()
}

/// Exponent vectors of all monomials of total degree `deg` in `n` variables.
pub fn monomials(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=deg {
        for mut rest in monomials(n - 1, deg - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// A polynomial with `terms` random monomials of degree in `lo..=hi`.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, lo: u32, hi: u32, terms: usize) -> MultiPoly {
    let all: Vec<Vec<u32>> = (lo..=hi).flat_map(|d| monomials(n, d)).collect();
    let picked = (0..terms).map(|_| (nonzero(rng, 3), all[rng.gen_range(0..all.len())].clone()));
    MultiPoly::from_terms(n, picked)
}

/// Ideal with `n ≤ 4` variables and at most 3 generators of degree at most 3, vanishing at the origin.
///
/// Linear parts are dropped from most generators so that tangent spaces are often large.
pub fn random_ideal(rng: &mut ChaCha8Rng) -> IdealPresentation {
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=3);
    let mut gens = Vec::with_capacity(k);
    while gens.len() < k {
        let lo = if rng.gen_bool(0.3) { 1 } else { 2 };
        let terms = rng.gen_range(1..=4);
        let g = random_poly(rng, n, lo, 3, terms);
        if !g.is_zero() {
            gens.push(g);
        }
    }
    IdealPresentation::new(n, gens, None).unwrap()
}

/// A nonzero element of `span`, which must be nonzero.
pub fn random_in(rng: &mut ChaCha8Rng, span: &SubspaceBasis) -> Vec<Scalar> {
    assert!(span.dim() > 0);
    loop {
        let mut v = vec![Scalar::zero(); span.ambient_dim()];
        for b in span.vectors() {
            let c = small(rng, 3);
            for (x, y) in v.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

pub fn curve_polys(g: &CurveGerm) -> Vec<MultiPoly> {
    g.components().iter().map(|j| j.to_poly()).collect()
}

/// Coefficient of `t^k` in a univariate polynomial.
pub fn coeff_t(p: &MultiPoly, k: u32) -> Scalar {
    p.coeff(&Monomial::new(vec![k]))
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> ExactMatrix {
    loop {
        let rows = (0..n).map(|_| random_vec(rng, n, 2)).collect();
        let m = ExactMatrix::from_rows(n, rows).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

/// A degree-3 nilpotent algebra `N₁ ⊕ N²` with random `μ` and `dim N² = r`,
/// written in a random basis.
pub fn random_nilpotent(rng: &mut ChaCha8Rng, d: usize, r: usize) -> AlgebraPoint {
    assert!(r <= d * (d + 1) / 2, "N² cannot have dimension {r} when d = {d}");
    let n = d + r;
    loop {
        let mut t = BilinearMap::square(n);
        for a in 0..d {
            for b in a..d {
                let mut v = vec![Scalar::zero(); n];
                for q in 0..r {
                    v[d + q] = small(rng, 2);
                }
                t.set_sym(a, b, &v);
            }
        }
        let adapted = AlgebraPoint::new(t).unwrap();
        let alg = adapted.change_basis(&random_invertible(rng, n)).unwrap();
        let square = tancone::algschemes::algebra_invariants(&alg).unwrap().square.dim();
        if square == r {
            return alg;
        }
    }
}

/// Checks the linearised associativity condition of a symmetric map `m` at `alg`
/// directly on basis triples.
pub fn is_tangent_direction(alg: &AlgebraPoint, m: &BilinearMap) -> bool {
    let n = alg.dim();
    let t = alg.table();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // m(e_i e_j, e_k) + m(e_i, e_j) e_k = m(e_i, e_j e_k) + e_i m(e_j, e_k)
                let a = m.apply_right_basis(alg.product(i, j), k);
                let b = t.apply_right_basis(m.on_basis(i, j), k);
                let c = m.apply_left_basis(i, alg.product(j, k));
                let e = t.apply_left_basis(i, m.on_basis(j, k));
                if (0..n).any(|l| &a[l] + &b[l] != &c[l] + &e[l]) {
                    return false;
                }
            }
        }
    }
    true
}
