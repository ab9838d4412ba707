//! Contact order of smooth curve germs with affine varieties.
//!
//! All operations work relative to the generators of an [`IdealPresentation`]:
//! with a non-radical presentation the answers are those of the scheme it
//! defines, not of the underlying reduced variety.
//!
//! The central construction is [`construct_curve3`]. For a base point `p` and
//! a direction `v` with `l_f(v) = 0` for every generator, put
//! `W = span{(l_g, q_g(v))}` in `Q^{n+1}`, where `l_g`, `q_g` are the linear and
//! quadratic parts of a generator at `p`. If no element of `W` has the shape
//! `(0, …, 0, c)` with `c ≠ 0`, the equations `l_w(γ) + w_{n+1} = 0` over `W`
//! are solvable and `G(t) = p + t·v + t²·γ` meets the variety with
//! multiplicity at least 3.
//!
//! Using the generator span for `W` relies on `v` being a tangent direction:
//! for `f = Σ hᵢ·gᵢ` at the origin, `l_f = Σ hᵢ(0)·l_{gᵢ}` and
//! `q_f(v) = Σ hᵢ(0)·q_{gᵢ}(v) + Σ l_{hᵢ}(v)·l_{gᵢ}(v)`, and the last sum
//! vanishes exactly when every `l_{gᵢ}(v)` does.

use num_traits::Zero;
use thiserror::Error;

use crate::exactla::{self, AffineSolution, ExactMatrix, LinAlgError, SubspaceBasis};
use crate::polyring::{CurveGerm, MultiPoly, OrderResult, PolyError, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generator {index} has {got} variables, expected {expected}")]
    GeneratorNvars { index: usize, expected: usize, got: usize },
    #[error("curve has {got} coordinates, ideal has {expected} variables")]
    CurveNvars { expected: usize, got: usize },
    #[error("curve is not smooth at its base point (zero velocity)")]
    NonSmooth,
    #[error("curve passes through {curve:?}, not through the base point {base:?}")]
    BasePointMismatch { curve: Vec<String>, base: Vec<String> },
    #[error("base point is not on the variety: generator {index} evaluates to {value}")]
    NotOnVariety { index: usize, value: String },
    #[error("direction is not in the tangent space")]
    OutsideTangentSpace,
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("quadratic cone test failed; witness {witness:?} lies in W")]
    ConeTestFailed { witness: Vec<String> },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial does not vanish at the origin (constant term {0})")]
    NonzeroConstant(String),
    #[error("truncation must be at least 2, got {0}")]
    TruncTooSmall(usize),
    #[error("equations for gamma are inconsistent")]
    GammaInconsistent,
}

fn show(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Generators of an ideal in `Q[x₁, …, xₙ]` together with a base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    nvars: usize,
    generators: Vec<MultiPoly>,
    base_point: Vec<Scalar>,
}

impl IdealPresentation {
    pub fn new(
        nvars: usize,
        generators: Vec<MultiPoly>,
        base_point: Option<Vec<Scalar>>,
    ) -> Result<Self, ConeError> {
        if generators.is_empty() {
            return Err(ConeError::NoGenerators);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.nvars() != nvars {
                return Err(ConeError::GeneratorNvars { index, expected: nvars, got: g.nvars() });
            }
        }
        let base_point = base_point.unwrap_or_else(|| vec![Scalar::zero(); nvars]);
        if base_point.len() != nvars {
            return Err(PolyError::PointLength { expected: nvars, got: base_point.len() }.into());
        }
        Ok(IdealPresentation { nvars, generators, base_point })
    }

    /// Ideal with base point at the origin; the variable count is taken from the first generator.
    pub fn at_origin(generators: Vec<MultiPoly>) -> Result<Self, ConeError> {
        let n = generators.first().ok_or(ConeError::NoGenerators)?.nvars();
        Self::new(n, generators, None)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn base_point(&self) -> &[Scalar] {
        &self.base_point
    }

    pub fn with_base_point(&self, p: Vec<Scalar>) -> Result<Self, ConeError> {
        Self::new(self.nvars, self.generators.clone(), Some(p))
    }

    /// Fails with the first generator that does not vanish at the base point.
    pub fn require_base_on_variety(&self) -> Result<(), ConeError> {
        for (index, g) in self.generators.iter().enumerate() {
            let value = g.eval(&self.base_point)?;
            if !value.is_zero() {
                return Err(ConeError::NotOnVariety { index, value: value.to_string() });
            }
        }
        Ok(())
    }

    /// Generators rewritten in coordinates centred at the base point.
    pub fn centered_generators(&self) -> Result<Vec<MultiPoly>, ConeError> {
        Ok(self.generators.iter().map(|g| g.translate(&self.base_point)).collect::<Result<_, _>>()?)
    }

    fn check_direction(&self, v: &[Scalar]) -> Result<(), ConeError> {
        if v.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: v.len() }.into());
        }
        Ok(())
    }
}

/// Intersection multiplicity of a smooth curve germ with the variety, at `C(0)`.
///
/// This is the minimum over generators of the order of `g∘C`; for
/// `f = Σ hᵢ·gᵢ` the order of `f∘C` is never below that minimum, so the
/// generators already realise the ideal-wide value.
pub fn multiplicity(ideal: &IdealPresentation, curve: &CurveGerm) -> Result<OrderResult, ConeError> {
    if curve.nvars() != ideal.nvars {
        return Err(ConeError::CurveNvars { expected: ideal.nvars, got: curve.nvars() });
    }
    if !curve.is_smooth() {
        return Err(ConeError::NonSmooth);
    }
    let start = curve.base_point();
    if start != ideal.base_point {
        return Err(ConeError::BasePointMismatch { curve: show(&start), base: show(&ideal.base_point) });
    }
    let mut best = OrderResult::AboveTruncation { trunc: curve.trunc() };
    for g in &ideal.generators {
        best = best.min(curve.compose(g)?.order());
    }
    Ok(best)
}

/// Linear parts at the base point, one row per generator.
fn linear_part_matrix(centered: &[MultiPoly], n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(centered.len(), n);
    for (i, g) in centered.iter().enumerate() {
        for (j, c) in g.linear_coeffs().into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

/// Zariski tangent space at the base point: the common kernel of the linear parts.
pub fn tangent_space(ideal: &IdealPresentation) -> Result<SubspaceBasis, ConeError> {
    ideal.require_base_on_variety()?;
    let centered = ideal.centered_generators()?;
    Ok(linear_part_matrix(&centered, ideal.nvars).kernel())
}

/// `(l_g, q_g(v))` for a polynomial already centred at the base point.
pub fn w_vector(centered: &MultiPoly, v: &[Scalar]) -> Result<Vec<Scalar>, ConeError> {
    let mut w = centered.linear_coeffs();
    w.push(centered.homogeneous_component(2).eval(v)?);
    Ok(w)
}

fn require_tangent(ideal: &IdealPresentation, v: &[Scalar]) -> Result<Vec<MultiPoly>, ConeError> {
    ideal.check_direction(v)?;
    ideal.require_base_on_variety()?;
    let centered = ideal.centered_generators()?;
    let lin = linear_part_matrix(&centered, ideal.nvars);
    if !exactla::is_zero_vec(&lin.mul_vec(v)?) {
        return Err(ConeError::OutsideTangentSpace);
    }
    Ok(centered)
}

/// `W = span{(l_g, q_g(v))}` over the generators; requires `v` in the tangent space.
pub fn build_w(ideal: &IdealPresentation, v: &[Scalar]) -> Result<SubspaceBasis, ConeError> {
    let centered = require_tangent(ideal, v)?;
    let rows = centered.iter().map(|g| w_vector(g, v)).collect::<Result<Vec<_>, _>>()?;
    Ok(SubspaceBasis::span(ideal.nvars + 1, rows)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeTestReport {
    pub verdict: Verdict,
    pub w: SubspaceBasis,
    /// An element `(0, …, 0, c)` of `W` with `c ≠ 0`, present exactly on failure.
    pub witness: Option<Vec<Scalar>>,
}

/// Finds an element of `W` whose first `n` coordinates vanish and whose last does not.
fn vertical_witness(w: &SubspaceBasis, n: usize) -> Result<Option<Vec<Scalar>>, ConeError> {
    if w.dim() == 0 {
        return Ok(None);
    }
    let heads: Vec<Vec<Scalar>> = w.vectors().iter().map(|b| b[..n].to_vec()).collect();
    let relations = ExactMatrix::from_columns(n, &heads)?.kernel();
    for lambda in relations.vectors() {
        let candidate = exactla::combine(lambda, w.vectors(), n + 1);
        if !candidate[n].is_zero() {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Necessary condition for `v` to lie in the tangent cone: no `(0, …, 0, c ≠ 0)` in `W`.
pub fn cone_necessary_test(ideal: &IdealPresentation, v: &[Scalar]) -> Result<ConeTestReport, ConeError> {
    ideal.check_direction(v)?;
    if exactla::is_zero_vec(v) {
        return Err(ConeError::ZeroDirection);
    }
    let w = build_w(ideal, v)?;
    let witness = vertical_witness(&w, ideal.nvars)?;
    let verdict = if witness.is_some() { Verdict::Fail } else { Verdict::Pass };
    Ok(ConeTestReport { verdict, w, witness })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve3Result {
    pub gamma: Vec<Scalar>,
    /// `G(t) = p + t·v + t²·γ`.
    pub curve: CurveGerm,
    pub multiplicity: OrderResult,
    /// Dimension of the space of alternative choices for `γ`.
    pub gamma_kernel_dim: usize,
}

/// Builds `G(t) = p + t·v + t²·γ` with contact order at least 3.
///
/// `γ` is zero when `W` lies in `Qⁿ × {0}`; otherwise it is the canonical
/// solution (free coordinates zero) of `⟨w_{1..n}, γ⟩ = −w_{n+1}` over a basis of `W`.
/// The base point may be a smooth point; the construction only needs the cone test to pass.
pub fn construct_curve3(ideal: &IdealPresentation, v: &[Scalar], trunc: usize) -> Result<Curve3Result, ConeError> {
    if trunc < 2 {
        return Err(ConeError::TruncTooSmall(trunc));
    }
    let report = cone_necessary_test(ideal, v)?;
    if let Some(witness) = report.witness {
        return Err(ConeError::ConeTestFailed { witness: show(&witness) });
    }
    let n = ideal.nvars;
    let heads: Vec<Vec<Scalar>> = report.w.vectors().iter().map(|b| b[..n].to_vec()).collect();
    let system = ExactMatrix::from_rows(n, heads)?;
    let (gamma, gamma_kernel_dim) = if report.w.vectors().iter().all(|b| b[n].is_zero()) {
        (vec![Scalar::zero(); n], system.kernel().dim())
    } else {
        let rhs: Vec<Scalar> = report.w.vectors().iter().map(|b| -b[n].clone()).collect();
        match system.solve_affine(&rhs)? {
            AffineSolution::Solved { particular, kernel } => (particular, kernel.dim()),
            AffineSolution::Inconsistent => return Err(ConeError::GammaInconsistent),
        }
    };
    let curve = CurveGerm::from_taylor(trunc, &[ideal.base_point.clone(), v.to_vec(), gamma.clone()])?;
    let multiplicity = multiplicity(ideal, &curve)?;
    Ok(Curve3Result { gamma, curve, multiplicity, gamma_kernel_dim })
}

/// Lowest-degree homogeneous form of `f`, which cuts out the tangent cone of `f = 0` at the origin.
pub fn hypersurface_lowest_form(f: &MultiPoly) -> Result<MultiPoly, ConeError> {
    let low = f.min_degree().ok_or(ConeError::ZeroPolynomial)?;
    if low == 0 {
        return Err(ConeError::NonzeroConstant(f.constant_term().to_string()));
    }
    Ok(f.homogeneous_component(low))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub cone: ConeTestReport,
    pub curve: Option<Curve3Result>,
    pub contact_at_least_3: bool,
}

/// Runs the cone test and, when it passes, the order-3 construction.
pub fn verify_theorem(ideal: &IdealPresentation, v: &[Scalar], trunc: usize) -> Result<TheoremReport, ConeError> {
    let cone = cone_necessary_test(ideal, v)?;
    if cone.verdict == Verdict::Fail {
        return Ok(TheoremReport { cone, curve: None, contact_at_least_3: false });
    }
    let curve = construct_curve3(ideal, v, trunc)?;
    let contact_at_least_3 = curve.multiplicity.at_least(3);
    Ok(TheoremReport { cone, curve: Some(curve), contact_at_least_3 })
}
