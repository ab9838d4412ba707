//! Schemes of commutative multiplications and their obstruction systems.
//!
//! A multiplication on `Qⁿ` is stored through its structure constants
//! `e_i·e_j = Σ c_ij^k e_k` as a [`BilinearMap`]; the same `n³` numbers are the
//! coordinates of the point in the scheme ideals of [`gen_scheme_ideal`].
//!
//! For a degree-3 nilpotent algebra `N` with `N = N₁ ⊕ N²`, a symmetric map
//! `∘` splits into blocks `f_ij^k : Nᵢ ⊗ Nⱼ → N_k` ([`split_blocks`]). The
//! chain solver works in the adapted basis of a [`Splitting`], where the first
//! `d` coordinates span `N₁` and the last `r` span `N²`, and where the
//! multiplication of `N` is entirely described by `μ : S²N₁ → N²`.
//!
//! The mixed condition obtained from the associativity defect at
//! `(x, w, y)` with `w ∈ N²` is implemented as
//! `f12(y, f12(x, w)) − f12(x, f12(y, w)) = x·g12(y, w) − y·g12(x, w)`;
//! this is the orientation forced by expanding the defect, and the one under
//! which the defining equation of `g22` is symmetric in its first two arguments.

mod algebra;
mod chain;
mod corollary;
mod obstruction;
mod scheme;
mod spaces;
mod split;
mod tensor;
mod thm1;

pub use algebra::{algebra_invariants, coboundary, AlgebraInvariants, AlgebraPoint};
pub use chain::{
    check_ob1, check_ob2, coboundary_f11, g22_commutativity_check, solve_chain, ChainOutcome,
    ObstructionChain, Stage,
};
pub use corollary::{
    corollary_check, dim_identity_check, substitution_identity, CorollaryReport, DimIdentity,
    SubstitutionIdentity,
};
pub use obstruction::{linearized_constraint, linearized_system, quadratic_obstruction, ObstructionOutcome};
pub use scheme::{gen_scheme_ideal, scheme_tangent_space, variable_index, SchemeKind};
pub use spaces::{efor_report, f_space, lsym_target_space, orbit_tangent, EforReport};
pub use split::{reassemble, split_blocks, Splitting, SymMapBlocks};
pub use tensor::{pair_index, pairs, BilinearMap};
pub use thm1::{thm1_test, Thm1Dims, Thm1Report, Thm1Verdict};

use thiserror::Error;

use crate::conecurve::ConeError;
use crate::exactla::LinAlgError;
use crate::polyring::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("algebra dimension must be positive")]
    ZeroDimension,
    #[error("multiplication table is not symmetric at e{i}·e{j}")]
    NotSymmetric { i: usize, j: usize },
    #[error("map has shape {got:?}, expected {expected:?}")]
    Shape { expected: (usize, usize, usize), got: (usize, usize, usize) },
    #[error("multiplication is not associative")]
    NotAssociative,
    #[error("multiplication is not nilpotent of degree 3")]
    NotNilpotent3,
    #[error("point does not satisfy scheme generator {index}")]
    PointNotOnScheme { index: usize },
    #[error("scheme ideal has {got} variables, expected {expected}")]
    IdealNvars { expected: usize, got: usize },
    #[error("splitting does not match the algebra: {0}")]
    SplittingMismatch(String),
    #[error("algebra is not in A_(n,r): dim N² = {square}, r = {r}, dim Ann = {ann}")]
    NotInAnr { square: usize, r: usize, ann: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}
