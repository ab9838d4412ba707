//! Whether first-order deformations surviving the obstruction systems vanish
//! on the relations `Z = ker(μ : S²N₁ → N²)`.
//!
//! The `f12` equations are linear in `(f11, f12)` jointly; let `S` be their
//! solution space and `S₀ ⊆ S` the part with `f11|Z = 0`. Writing a point of
//! `S` as `Σ αᵢ aᵢ + Σ λⱼ bⱼ` with `aᵢ` a basis of `S₀` and `bⱼ` a complement,
//! the two obstruction systems read `G·g12 = F(α, λ)` with `F` quadratic.
//! Eliminating `g12` and then every monomial containing some `αᵢ` leaves
//! equations in the `λ` alone; if one of them is `λⱼ² = 0` then `λⱼ = 0` on
//! every solution, and the elimination is repeated without `bⱼ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chain::BlockContext;
use super::{algebra_invariants, pair_index, pairs, AlgError, AlgebraPoint, BilinearMap, Splitting};
use crate::exactla::{combine, is_zero_vec, AffineSolution, ExactMatrix, SubspaceBasis};
use crate::polyring::{int, Scalar};

const RANDOM_CANDIDATES: usize = 24;
const SEED: u64 = 0x7431;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Thm1Verdict {
    /// Every solution of the `f12` equations already has `f11|Z = 0`.
    HoldsLinear,
    /// The obstruction systems force `f11|Z = 0`.
    HoldsQuadratic,
    /// A solution with `f11|Z ≠ 0`; all blocks in adapted coordinates.
    Fails { f11: BilinearMap, f12: BilinearMap, g12: BilinearMap },
    /// Neither a forcing argument nor a witness was found.
    Inconclusive,
}

impl Thm1Verdict {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Thm1Verdict::HoldsLinear | Thm1Verdict::HoldsQuadratic => Some(true),
            Thm1Verdict::Fails { .. } => Some(false),
            Thm1Verdict::Inconclusive => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Thm1Dims {
    pub d: usize,
    pub r: usize,
    /// `dim Z`.
    pub kernel_mu: usize,
    /// `dim S`.
    pub co_solutions: usize,
    /// `dim S₀`.
    pub vanishing_on_kernel: usize,
    /// Number of complement directions forced to zero.
    pub forced: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm1Report {
    pub verdict: Thm1Verdict,
    pub dims: Thm1Dims,
}

struct Layout {
    d: usize,
    r: usize,
    npairs: usize,
}

impl Layout {
    fn f11_len(&self) -> usize {
        self.npairs * self.d
    }

    fn len(&self) -> usize {
        self.f11_len() + self.d * self.r * self.r
    }

    fn f11(&self, x: &[Scalar]) -> BilinearMap {
        let mut m = BilinearMap::zero(self.d, self.d, self.d);
        for (k, (a, b)) in pairs(self.d).into_iter().enumerate() {
            m.set_sym(a, b, &x[k * self.d..(k + 1) * self.d]);
        }
        m
    }

    fn f12(&self, x: &[Scalar]) -> BilinearMap {
        BilinearMap::from_vec(self.d, self.r, self.r, x[self.f11_len()..].to_vec()).expect("f12 block")
    }
}

/// Homogeneous `f12` equations in the joint unknowns `(f11 symmetric, f12)`.
fn co_matrix(ctx: &BlockContext, lay: &Layout) -> Result<ExactMatrix, AlgError> {
    let d = ctx.d;
    let off = lay.f11_len();
    let mut rows = Vec::new();
    let co = ctx.co_rows();
    let mut it = co.into_iter();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for q in 0..ctx.r {
                    let mut row = vec![Scalar::zero(); lay.len()];
                    for (i, v) in it.next().expect("row count") {
                        row[off + i] = v;
                    }
                    // −μ(f11(a,b), c) + μ(a, f11(b,c))
                    for e in 0..d {
                        row[pair_index(d, a, b) * d + e] -= ctx.mu.get(e, c, q);
                        row[pair_index(d, b, c) * d + e] += ctx.mu.get(a, e, q);
                    }
                    rows.push(row);
                }
            }
        }
    }
    Ok(ExactMatrix::from_rows(lay.len(), rows)?)
}

/// `f11|Z` as a vector, for each joint unknown vector `x`.
fn restriction(z: &SubspaceBasis, lay: &Layout, x: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(z.dim() * lay.d);
    for zv in z.vectors() {
        for c in 0..lay.d {
            out.push(zv.iter().enumerate().fold(Scalar::zero(), |acc, (k, w)| acc + w * &x[k * lay.d + c]));
        }
    }
    out
}

/// Tests the statement for `N` with the given splitting.
pub fn thm1_test(alg: &AlgebraPoint, split: &Splitting) -> Result<Thm1Report, AlgError> {
    let ctx = BlockContext::new(alg, split)?;
    let (d, r) = (ctx.d, ctx.r);
    let inv = algebra_invariants(alg)?;
    if !inv.in_anr(r) {
        return Err(AlgError::NotInAnr { square: inv.square.dim(), r, ann: inv.annihilator.dim() });
    }
    let lay = Layout { d, r, npairs: d * (d + 1) / 2 };
    let mut dims = Thm1Dims { d, r, ..Default::default() };

    let mu_cols: Vec<Vec<Scalar>> = pairs(d).into_iter().map(|(a, b)| ctx.mu.on_basis(a, b).to_vec()).collect();
    let z = if r == 0 {
        SubspaceBasis::full(lay.npairs)
    } else {
        ExactMatrix::from_columns(r, &mu_cols)?.kernel()
    };
    dims.kernel_mu = z.dim();
    let solutions = if lay.len() == 0 {
        SubspaceBasis::zero(0)
    } else if ctx.co_rows().is_empty() {
        SubspaceBasis::full(lay.len())
    } else {
        co_matrix(&ctx, &lay)?.kernel()
    };
    dims.co_solutions = solutions.dim();

    // S₀: combinations of the solution basis whose f11 vanishes on Z
    let restricted: Vec<Vec<Scalar>> = solutions.vectors().iter().map(|v| restriction(&z, &lay, v)).collect();
    let rdim = z.dim() * d;
    let s0: Vec<Vec<Scalar>> = if solutions.dim() == 0 {
        Vec::new()
    } else if rdim == 0 {
        solutions.vectors().to_vec()
    } else {
        ExactMatrix::from_columns(rdim, &restricted)?
            .kernel()
            .vectors()
            .iter()
            .map(|c| combine(c, solutions.vectors(), lay.len()))
            .collect()
    };
    dims.vanishing_on_kernel = s0.len();
    if s0.len() == solutions.dim() {
        return Ok(Thm1Report { verdict: Thm1Verdict::HoldsLinear, dims });
    }

    let mut complement = complement_of(&s0, &solutions, &lay)?;
    let rows = ctx.g12_rows();
    let g_matrix = sparse_to_dense(&rows, ctx.g12_unknowns());
    loop {
        let forced = forced_directions(&ctx, &rows, &s0, &complement)?;
        if forced.is_empty() {
            break;
        }
        dims.forced += forced.len();
        complement = complement.into_iter().enumerate().filter(|(i, _)| !forced.contains(i)).map(|(_, v)| v).collect();
        if complement.is_empty() {
            return Ok(Thm1Report { verdict: Thm1Verdict::HoldsQuadratic, dims });
        }
    }

    for y in candidates(&s0, &complement) {
        let x = combine(&y, &[s0.clone(), complement.clone()].concat(), lay.len());
        let (f11, f12) = (lay.f11(&x), lay.f12(&x));
        if is_zero_vec(&restriction(&z, &lay, &x)) {
            continue;
        }
        let rhs = ctx.g12_rhs(&f11, &f12, &f11, &f12);
        if let AffineSolution::Solved { particular, .. } = g_matrix.solve_affine(&rhs)? {
            let g12 = BilinearMap::from_vec(d, r, d, particular).expect("g12 block");
            return Ok(Thm1Report { verdict: Thm1Verdict::Fails { f11, f12, g12 }, dims });
        }
    }
    Ok(Thm1Report { verdict: Thm1Verdict::Inconclusive, dims })
}

fn sparse_to_dense(rows: &[BTreeMap<usize, Scalar>], cols: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (&j, v) in row {
            m.set(i, j, v.clone());
        }
    }
    m
}

/// The joint vector of `x∘y = f(x)·y + f(y)·x` for `f` the `a`-th coordinate of `N₁`.
fn functional_vector(lay: &Layout, a: usize) -> Vec<Scalar> {
    let mut x = vec![Scalar::zero(); lay.len()];
    for (k, (b, c)) in pairs(lay.d).into_iter().enumerate() {
        if b == a {
            x[k * lay.d + c] += Scalar::one();
        }
        if c == a {
            x[k * lay.d + b] += Scalar::one();
        }
    }
    for p in 0..lay.r {
        x[lay.f11_len() + (a * lay.r + p) * lay.r + p] = Scalar::one();
    }
    x
}

/// A complement of `S₀` in `S`, preferring the maps `f(x)·y + f(y)·x`.
fn complement_of(
    s0: &[Vec<Scalar>],
    solutions: &SubspaceBasis,
    lay: &Layout,
) -> Result<Vec<Vec<Scalar>>, AlgError> {
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    for a in 0..lay.d {
        let f = functional_vector(lay, a);
        if solutions.contains(&f)? {
            candidates.push(f);
        }
    }
    candidates.extend(solutions.vectors().iter().cloned());
    let mut span: Vec<Vec<Scalar>> = s0.to_vec();
    let mut rank = span.len();
    let mut out = Vec::new();
    for c in candidates {
        if rank == solutions.dim() {
            break;
        }
        span.push(c.clone());
        let new_rank = ExactMatrix::from_rows(lay.len(), span.clone())?.rank();
        if new_rank > rank {
            rank = new_rank;
            out.push(c);
        } else {
            span.pop();
        }
    }
    Ok(out)
}

/// Indices `j` such that `λⱼ² = 0` follows linearly from the eliminated system.
fn forced_directions(
    ctx: &BlockContext,
    rows: &[BTreeMap<usize, Scalar>],
    s0: &[Vec<Scalar>],
    complement: &[Vec<Scalar>],
) -> Result<Vec<usize>, AlgError> {
    let lay = Layout { d: ctx.d, r: ctx.r, npairs: ctx.d * (ctx.d + 1) / 2 };
    let basis: Vec<&Vec<Scalar>> = s0.iter().chain(complement).collect();
    let k = basis.len();
    let m0 = s0.len();
    let gcols = ctx.g12_unknowns();
    let maps: Vec<(BilinearMap, BilinearMap)> = basis.iter().map(|x| (lay.f11(x), lay.f12(x))).collect();
    // monomials y_s y_t, s ≤ t, in lexicographic order: those containing an α come first
    let monos: Vec<(usize, usize)> = (0..k).flat_map(|s| (s..k).map(move |t| (s, t))).collect();
    let ncols = gcols + monos.len();
    let mut dense = vec![vec![Scalar::zero(); ncols]; rows.len()];
    for (i, row) in rows.iter().enumerate() {
        for (&j, v) in row {
            dense[i][j] = v.clone();
        }
    }
    for (mi, &(s, t)) in monos.iter().enumerate() {
        let mut coeff = ctx.g12_rhs(&maps[s].0, &maps[s].1, &maps[t].0, &maps[t].1);
        if s != t {
            let other = ctx.g12_rhs(&maps[t].0, &maps[t].1, &maps[s].0, &maps[s].1);
            for (c, o) in coeff.iter_mut().zip(other) {
                *c += o;
            }
        }
        for (i, c) in coeff.into_iter().enumerate() {
            // G·g − F(y) = 0
            dense[i][gcols + mi] = -c;
        }
    }
    let ech = ExactMatrix::from_rows(ncols, dense)?.echelon();
    let mut forced = Vec::new();
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        if p < gcols {
            continue;
        }
        let (s, t) = monos[p - gcols];
        if s != t || s < m0 {
            continue;
        }
        if row.iter().enumerate().all(|(j, v)| j == p || v.is_zero()) {
            forced.push(s - m0);
        }
    }
    Ok(forced)
}

/// Coordinates `(α, λ)` to try as witnesses, all with `λ ≠ 0`.
fn candidates(s0: &[Vec<Scalar>], complement: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let (m0, c) = (s0.len(), complement.len());
    let unit = |i: usize| {
        let mut y = vec![Scalar::zero(); m0 + c];
        y[m0 + i] = Scalar::one();
        y
    };
    let mut out: Vec<Vec<Scalar>> = (0..c).map(unit).collect();
    for i in 0..c {
        for j in i + 1..c {
            for sign in [1i64, -1] {
                let mut y = unit(i);
                y[m0 + j] = int(sign);
                out.push(y);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_CANDIDATES {
        let mut y: Vec<Scalar> = (0..m0 + c).map(|_| int(rng.gen_range(-2..=2))).collect();
        if y[m0..].iter().all(Zero::is_zero) {
            y[m0] = Scalar::one();
        }
        out.push(y);
    }
    out
}
