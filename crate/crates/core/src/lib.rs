//! Exact computations around tangent cones and contact orders.
//!
//! * [`polyring`]: rational polynomials, truncated power series, curve germs.
//! * [`exactla`]: fraction-free rank, kernels and affine solving.
//! * [`conecurve`]: intersection multiplicity of a smooth curve germ with an
//!   affine variety, tangent spaces, the quadratic cone test and the
//!   construction of a curve `p + t·v + t²·γ` with contact order at least 3.
//! * [`algschemes`]: schemes of commutative associative and degree-3
//!   nilpotent multiplications, their tangent spaces, and the block
//!   obstruction systems for first-order deformations.
//! * [`formats`] and [`cli`]: text file formats and the command-line driver.

pub mod algschemes;
pub mod cli;
pub mod conecurve;
pub mod exactla;
pub mod formats;
pub mod polyring;
