use std::collections::BTreeMap;

use num_traits::Zero;

use super::{AlgError, AlgebraPoint, BilinearMap, Splitting};
use crate::exactla::{is_zero_vec, AffineSolution, ExactMatrix, LinearSystem};
use crate::polyring::Scalar;

/// Equation system at which [`solve_chain`] stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Co,
    Ob1,
    Ob2,
    G22,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Co => "co",
            Stage::Ob1 => "ob1",
            Stage::Ob2 => "ob2",
            Stage::G22 => "g22",
        })
    }
}

/// Blocks of a first-order deformation `∘` and of the second-order term `⋆`,
/// in adapted coordinates.
///
/// Shapes: `f11 : (d, d, d)`, `f12 : (d, r, r)`, `g12 : (d, r, d)`, `g22 : (r, r, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionChain {
    pub f11: BilinearMap,
    pub f12: BilinearMap,
    pub g12: BilinearMap,
    pub g22: BilinearMap,
    /// Dimension of the solution space of the homogeneous `f12` system.
    pub f12_kernel_dim: usize,
    /// Dimension of the solution space of the homogeneous `g12` system.
    pub g12_kernel_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainOutcome {
    Solved(ObstructionChain),
    Infeasible { stage: Stage, f12_kernel_dim: Option<usize> },
}

/// Multiplication data needed by the block equations.
#[derive(Debug, Clone)]
pub(crate) struct BlockContext {
    pub d: usize,
    pub r: usize,
    /// `μ : S²N₁ → N²`, shape `(d, d, r)`.
    pub mu: BilinearMap,
}

impl BlockContext {
    pub fn new(alg: &AlgebraPoint, split: &Splitting) -> Result<Self, AlgError> {
        split.validate(alg)?;
        if !alg.is_nilpotent3() {
            return Err(AlgError::NotNilpotent3);
        }
        Ok(BlockContext { d: split.d(), r: split.r(), mu: split.mu(alg) })
    }

    pub fn f12_unknowns(&self) -> usize {
        self.d * self.r * self.r
    }

    pub fn g12_unknowns(&self) -> usize {
        self.d * self.r * self.d
    }

    pub fn check_shape(&self, m: &BilinearMap, expected: (usize, usize, usize)) -> Result<(), AlgError> {
        let got = (m.left(), m.right(), m.out());
        if got != expected {
            return Err(AlgError::Shape { expected, got });
        }
        Ok(())
    }

    /// Left side of the `f12` equations, one row per `(a, b, c, q)`:
    /// `f12(a, μ(b,c)) − f12(c, μ(a,b))`.
    pub fn co_rows(&self) -> Vec<BTreeMap<usize, Scalar>> {
        let (d, r) = (self.d, self.r);
        let idx = |a: usize, p: usize, q: usize| (a * r + p) * r + q;
        let mut rows = Vec::with_capacity(d * d * d * r);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for q in 0..r {
                        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                        for p in 0..r {
                            let bc = self.mu.get(b, c, p);
                            if !bc.is_zero() {
                                *row.entry(idx(a, p, q)).or_insert_with(Scalar::zero) += bc;
                            }
                            let ab = self.mu.get(a, b, p);
                            if !ab.is_zero() {
                                *row.entry(idx(c, p, q)).or_insert_with(Scalar::zero) -= ab;
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    /// Right side of the `f12` equations: `μ(f11(a,b), c) − μ(a, f11(b,c))`, linear in `f11`.
    pub fn co_rhs(&self, f11: &BilinearMap) -> Vec<Scalar> {
        let (d, r) = (self.d, self.r);
        let mut out = Vec::with_capacity(d * d * d * r);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let left = self.mu.apply_right_basis(f11.on_basis(a, b), c);
                    let right = self.mu.apply_left_basis(a, f11.on_basis(b, c));
                    out.extend(left.iter().zip(&right).map(|(x, y)| x - y));
                }
            }
        }
        out
    }

    pub fn ob1_len(&self) -> usize {
        self.d.pow(4)
    }

    /// Left side in `g12` of the two obstruction systems. Rows `(a, b, c, e)` of
    /// the first, `−g12(c, μ(a,b)) + g12(a, μ(b,c))`, then rows `(a, b, p, q)` of
    /// the mixed one, `μ(a, g12(b, w_p)) − μ(b, g12(a, w_p))`.
    pub fn g12_rows(&self) -> Vec<BTreeMap<usize, Scalar>> {
        let (d, r) = (self.d, self.r);
        let idx = |a: usize, p: usize, e: usize| (a * r + p) * d + e;
        let mut rows = Vec::with_capacity(d.pow(4) + d * d * r * r);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                        for p in 0..r {
                            let ab = self.mu.get(a, b, p);
                            if !ab.is_zero() {
                                *row.entry(idx(c, p, e)).or_insert_with(Scalar::zero) -= ab;
                            }
                            let bc = self.mu.get(b, c, p);
                            if !bc.is_zero() {
                                *row.entry(idx(a, p, e)).or_insert_with(Scalar::zero) += bc;
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                for p in 0..r {
                    for q in 0..r {
                        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                        for e in 0..d {
                            let ae = self.mu.get(a, e, q);
                            if !ae.is_zero() {
                                *row.entry(idx(b, p, e)).or_insert_with(Scalar::zero) += ae;
                            }
                            let be = self.mu.get(b, e, q);
                            if !be.is_zero() {
                                *row.entry(idx(a, p, e)).or_insert_with(Scalar::zero) -= be;
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    /// Right side matching [`Self::g12_rows`], with the outer maps applied to the
    /// values of the inner ones:
    /// `f11ᵒ(f11ⁱ(a,b), c) − f11ᵒ(a, f11ⁱ(b,c))` and
    /// `f12ᵒ(b, f12ⁱ(a, w)) − f12ᵒ(a, f12ⁱ(b, w))`.
    /// With equal outer and inner maps this is the actual right side.
    pub fn g12_rhs(
        &self,
        outer11: &BilinearMap,
        outer12: &BilinearMap,
        inner11: &BilinearMap,
        inner12: &BilinearMap,
    ) -> Vec<Scalar> {
        let (d, r) = (self.d, self.r);
        let mut out = Vec::with_capacity(d.pow(4) + d * d * r * r);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let left = outer11.apply_right_basis(inner11.on_basis(a, b), c);
                    let right = outer11.apply_left_basis(a, inner11.on_basis(b, c));
                    out.extend(left.iter().zip(&right).map(|(x, y)| x - y));
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                for p in 0..r {
                    let left = outer12.apply_left_basis(b, inner12.on_basis(a, p));
                    let right = outer12.apply_left_basis(a, inner12.on_basis(b, p));
                    out.extend(left.iter().zip(&right).map(|(x, y)| x - y));
                }
            }
        }
        out
    }

    fn system(&self, unknowns: usize, rows: &[BTreeMap<usize, Scalar>], rhs: &[Scalar]) -> LinearSystem {
        let mut sys = LinearSystem::new(unknowns);
        for (row, b) in rows.iter().zip(rhs) {
            sys.push(row.iter().map(|(&i, c)| (i, c.clone())), b.clone());
        }
        sys
    }

    /// `g22` from `μ(a,b)`-linear equations, if they are consistent.
    fn solve_g22(
        &self,
        f11: &BilinearMap,
        f12: &BilinearMap,
        g12: &BilinearMap,
    ) -> Result<Option<BilinearMap>, AlgError> {
        let (d, r) = (self.d, self.r);
        let idx = |p1: usize, p2: usize, q: usize| (p1 * r + p2) * r + q;
        let mut sys = LinearSystem::new(r * r * r);
        for a in 0..d {
            for b in 0..d {
                let ab = self.mu.on_basis(a, b);
                for p in 0..r {
                    // μ(a, g12(b, w)) − f12(f11(a,b), w) + f12(a, f12(b, w))
                    let t1 = self.mu.apply_left_basis(a, g12.on_basis(b, p));
                    let t2 = f12.apply_right_basis(f11.on_basis(a, b), p);
                    let t3 = f12.apply_left_basis(a, f12.on_basis(b, p));
                    for q in 0..r {
                        let rhs = &t1[q] - &t2[q] + &t3[q];
                        sys.push((0..r).map(|p1| (idx(p1, p, q), ab[p1].clone())), rhs);
                    }
                }
            }
        }
        Ok(match sys.solve()? {
            AffineSolution::Solved { particular, .. } => {
                Some(BilinearMap::from_vec(r, r, r, particular).expect("r³ unknowns"))
            }
            AffineSolution::Inconsistent => None,
        })
    }
}

/// Solves the block equations for a given `f11 : S²N₁ → N₁` (adapted coordinates).
///
/// `f12` is taken as the particular solution with free variables zero; `g12`
/// then solves the first obstruction system, together with the mixed one
/// when the first leaves freedom. Finally `g22` is derived.
pub fn solve_chain(alg: &AlgebraPoint, split: &Splitting, f11: &BilinearMap) -> Result<ChainOutcome, AlgError> {
    let ctx = BlockContext::new(alg, split)?;
    let (d, r) = (ctx.d, ctx.r);
    ctx.check_shape(f11, (d, d, d))?;
    if !f11.is_symmetric() {
        return Err(AlgError::Precondition("f11 is not symmetric".into()));
    }
    let co = ctx.system(ctx.f12_unknowns(), &ctx.co_rows(), &ctx.co_rhs(f11));
    let (f12, f12_kernel_dim) = match co.solve()? {
        AffineSolution::Solved { particular, kernel } => {
            (BilinearMap::from_vec(d, r, r, particular).expect("f12 unknowns"), kernel.dim())
        }
        AffineSolution::Inconsistent => {
            return Ok(ChainOutcome::Infeasible { stage: Stage::Co, f12_kernel_dim: None });
        }
    };
    let infeasible = |stage| Ok(ChainOutcome::Infeasible { stage, f12_kernel_dim: Some(f12_kernel_dim) });
    let rows = ctx.g12_rows();
    let rhs = ctx.g12_rhs(f11, &f12, f11, &f12);
    let n1 = ctx.ob1_len();
    let ob1 = ctx.system(ctx.g12_unknowns(), &rows[..n1], &rhs[..n1]);
    let (g12, g12_kernel_dim) = match ob1.solve()? {
        AffineSolution::Solved { particular, kernel } => (particular, kernel.dim()),
        AffineSolution::Inconsistent => return infeasible(Stage::Ob1),
    };
    let g12 = if g12_kernel_dim == 0 {
        g12
    } else {
        match ctx.system(ctx.g12_unknowns(), &rows, &rhs).solve()? {
            AffineSolution::Solved { particular, .. } => particular,
            AffineSolution::Inconsistent => return infeasible(Stage::Ob2),
        }
    };
    let g12 = BilinearMap::from_vec(d, r, d, g12).expect("g12 unknowns");
    if !is_zero_vec(&ob2_residual(&ctx, &f12, &g12)) {
        return infeasible(Stage::Ob2);
    }
    let Some(g22) = ctx.solve_g22(f11, &f12, &g12)? else {
        return infeasible(Stage::G22);
    };
    Ok(ChainOutcome::Solved(ObstructionChain { f11: f11.clone(), f12, g12, g22, f12_kernel_dim, g12_kernel_dim }))
}

fn ob2_residual(ctx: &BlockContext, f12: &BilinearMap, g12: &BilinearMap) -> Vec<Scalar> {
    let rows = ctx.g12_rows();
    let zero11 = BilinearMap::zero(ctx.d, ctx.d, ctx.d);
    let rhs = ctx.g12_rhs(&zero11, f12, &zero11, f12);
    let g = g12.as_slice();
    rows[ctx.ob1_len()..]
        .iter()
        .zip(&rhs[ctx.ob1_len()..])
        .map(|(row, b)| row.iter().fold(Scalar::zero(), |acc, (&i, c)| acc + c * &g[i]) - b)
        .collect()
}

fn check_chain_shapes(ctx: &BlockContext, chain: &ObstructionChain) -> Result<(), AlgError> {
    let (d, r) = (ctx.d, ctx.r);
    ctx.check_shape(&chain.f11, (d, d, d))?;
    ctx.check_shape(&chain.f12, (d, r, r))?;
    ctx.check_shape(&chain.g12, (d, r, d))?;
    ctx.check_shape(&chain.g22, (r, r, r))
}

/// Residual of the first obstruction system, indexed by `(a, b, c, e)`.
pub fn check_ob1(alg: &AlgebraPoint, split: &Splitting, chain: &ObstructionChain) -> Result<Vec<Scalar>, AlgError> {
    let ctx = BlockContext::new(alg, split)?;
    check_chain_shapes(&ctx, chain)?;
    let rows = ctx.g12_rows();
    let rhs = ctx.g12_rhs(&chain.f11, &chain.f12, &chain.f11, &chain.f12);
    let g = chain.g12.as_slice();
    Ok(rows[..ctx.ob1_len()]
        .iter()
        .zip(&rhs)
        .map(|(row, b)| row.iter().fold(Scalar::zero(), |acc, (&i, c)| acc + c * &g[i]) - b)
        .collect())
}

/// Residual of `μ(x, g12(y, w)) − μ(y, g12(x, w)) − f12(y, f12(x, w)) + f12(x, f12(y, w))`,
/// indexed by `(x, y, w, q)` over the adapted bases of `N₁`, `N₁`, `N²`, `N²`.
pub fn check_ob2(alg: &AlgebraPoint, split: &Splitting, chain: &ObstructionChain) -> Result<Vec<Scalar>, AlgError> {
    let ctx = BlockContext::new(alg, split)?;
    check_chain_shapes(&ctx, chain)?;
    Ok(ob2_residual(&ctx, &chain.f12, &chain.g12))
}

/// Whether the derived `g22` is symmetric.
pub fn g22_commutativity_check(chain: &ObstructionChain) -> bool {
    chain.g22.is_symmetric()
}

/// `f11(x, y) = ψ(μ(x, y))` for `ψ : N² → N₁` given as a `d × r` matrix.
///
/// This is the `N₁`-block of the coboundary of `φ = −ψ` on `N²`, `φ = 0` on `N₁`.
pub fn coboundary_f11(alg: &AlgebraPoint, split: &Splitting, psi: &ExactMatrix) -> Result<BilinearMap, AlgError> {
    let (d, r) = (split.d(), split.r());
    if psi.rows() != d || psi.cols() != r {
        return Err(AlgError::Shape { expected: (d, r, 1), got: (psi.rows(), psi.cols(), 1) });
    }
    let mu = split.mu(alg);
    let mut f11 = BilinearMap::zero(d, d, d);
    for a in 0..d {
        for b in 0..d {
            for (c, v) in psi.mul_vec(mu.on_basis(a, b))?.into_iter().enumerate() {
                f11.set(a, b, c, v);
            }
        }
    }
    Ok(f11)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, ints};

    /// `d = 2`, `r = 1`: `x1² = x2² = w`, `x1 x2 = 0`.
    fn sample21() -> AlgebraPoint {
        AlgebraPoint::from_products(3, &[(0, 0, ints(&[0, 0, 1])), (1, 1, ints(&[0, 0, 1]))]).unwrap()
    }

    fn solved(o: ChainOutcome) -> ObstructionChain {
        match o {
            ChainOutcome::Solved(c) => c,
            other => panic!("expected a solved chain, got {other:?}"),
        }
    }

    #[test]
    fn zero_f11_gives_zero_chain() {
        let a = sample21();
        let s = Splitting::new(&a).unwrap();
        let c = solved(solve_chain(&a, &s, &BilinearMap::zero(2, 2, 2)).unwrap());
        assert!(c.f12.is_zero() && c.g12.is_zero() && c.g22.is_zero());
        assert_eq!(c.f12_kernel_dim, 0);
        assert!(g22_commutativity_check(&c));
        assert!(is_zero_vec(&check_ob2(&a, &s, &c).unwrap()));
    }

    #[test]
    fn coboundary_chain_is_solved() {
        let a = sample21();
        let s = Splitting::new(&a).unwrap();
        let psi = ExactMatrix::from_rows(1, vec![ints(&[2]), ints(&[-3])]).unwrap();
        let f11 = coboundary_f11(&a, &s, &psi).unwrap();
        let c = solved(solve_chain(&a, &s, &f11).unwrap());
        assert!(is_zero_vec(&check_ob1(&a, &s, &c).unwrap()));
        assert!(is_zero_vec(&check_ob2(&a, &s, &c).unwrap()));
        assert!(g22_commutativity_check(&c));
        // f12(x, w) = −x·ψ(w)
        for x in 0..2 {
            let expected = -a.product(x, 0)[2].clone() * psi.get(0, 0) - a.product(x, 1)[2].clone() * psi.get(1, 0);
            assert_eq!(c.f12.get(x, 0, 0), &expected);
        }
        let mut bad = c.clone();
        bad.g12.set(0, 0, 1, bad.g12.get(0, 0, 1) + int(1));
        assert!(!is_zero_vec(&check_ob2(&a, &s, &bad).unwrap()));
    }

    #[test]
    fn incompatible_f11_fails_at_co() {
        // d = 3, r = 1: x1² = x2² = x3² = w
        let w = ints(&[0, 0, 0, 1]);
        let a = AlgebraPoint::from_products(4, &[(0, 0, w.clone()), (1, 1, w.clone()), (2, 2, w)]).unwrap();
        let s = Splitting::new(&a).unwrap();
        let mut f11 = BilinearMap::zero(3, 3, 3);
        f11.set_sym(0, 1, &ints(&[1, 0, 0]));
        let out = solve_chain(&a, &s, &f11).unwrap();
        assert_eq!(out, ChainOutcome::Infeasible { stage: Stage::Co, f12_kernel_dim: None });
        // f11(x1, x1) = x1 is compatible
        let mut f11 = BilinearMap::zero(3, 3, 3);
        f11.set_sym(0, 0, &ints(&[1, 0, 0]));
        assert_eq!(solved(solve_chain(&a, &s, &f11).unwrap()).f12_kernel_dim, 0);
    }

    #[test]
    fn rejects_non_nilpotent() {
        let a = AlgebraPoint::from_products(1, &[(0, 0, ints(&[1]))]).unwrap();
        let s = Splitting::new(&a).unwrap();
        assert_eq!(solve_chain(&a, &s, &BilinearMap::zero(0, 0, 0)), Err(AlgError::NotNilpotent3));
    }
}
