use num_traits::{One, Zero};

use super::{AlgError, AlgebraPoint};
use crate::conecurve::IdealPresentation;
use crate::exactla::{ExactMatrix, SubspaceBasis};
use crate::polyring::{Monomial, MultiPoly, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// Commutative associative multiplications.
    Assoc,
    /// Commutative multiplications with all triple products zero.
    Nilp3,
}

/// Position of `c_ij^k` among the `n³` scheme variables.
pub fn variable_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

fn quad(nv: usize, a: usize, b: usize) -> Monomial {
    let mut e = vec![0u32; nv];
    e[a] += 1;
    e[b] += 1;
    Monomial::new(e)
}

/// Scheme ideal in the structure constants, based at the zero multiplication.
///
/// Generators come in a fixed order: the `n·(n−1)/2·n` commutativity forms
/// `c_ij^k − c_ji^k` (`i < j`), then one quadric per `(i, j, k, l)`. Quadrics
/// that vanish identically are kept so that the count is always `n⁴`.
pub fn gen_scheme_ideal(n: usize, kind: SchemeKind) -> Result<IdealPresentation, AlgError> {
    if n == 0 {
        return Err(AlgError::ZeroDimension);
    }
    let nv = n * n * n;
    let v = |i, j, k| variable_index(n, i, j, k);
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut c = vec![Scalar::zero(); nv];
                c[v(i, j, k)] = Scalar::one();
                c[v(j, i, k)] = -Scalar::one();
                gens.push(MultiPoly::linear(&c));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut terms = Vec::new();
                    for s in 0..n {
                        // (e_i e_j) e_k, coordinate l
                        terms.push((Scalar::one(), quad(nv, v(i, j, s), v(s, k, l)).exponents().to_vec()));
                        if kind == SchemeKind::Assoc {
                            // e_i (e_j e_k), coordinate l
                            terms.push((-Scalar::one(), quad(nv, v(i, s, l), v(j, k, s)).exponents().to_vec()));
                        }
                    }
                    gens.push(MultiPoly::from_terms(nv, terms));
                }
            }
        }
    }
    Ok(IdealPresentation::new(nv, gens, None)?)
}

/// Tangent space of the scheme at `alg`, inside the symmetric tensors.
pub fn scheme_tangent_space(ideal: &IdealPresentation, alg: &AlgebraPoint) -> Result<SubspaceBasis, AlgError> {
    let n = alg.dim();
    let nv = n * n * n;
    if ideal.nvars() != nv {
        return Err(AlgError::IdealNvars { expected: nv, got: ideal.nvars() });
    }
    let point = alg.point();
    let mut rows = Vec::new();
    for (index, g) in ideal.generators().iter().enumerate() {
        if !g.eval(&point)?.is_zero() {
            return Err(AlgError::PointNotOnScheme { index });
        }
        let grad = g.gradient_at(&point)?;
        if grad.iter().any(|c| !c.is_zero()) {
            rows.push(grad);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut c = vec![Scalar::zero(); nv];
                c[variable_index(n, i, j, k)] = Scalar::one();
                c[variable_index(n, j, i, k)] = -Scalar::one();
                rows.push(c);
            }
        }
    }
    if rows.is_empty() {
        return Ok(SubspaceBasis::full(nv));
    }
    Ok(ExactMatrix::from_rows(nv, rows)?.kernel())
}
