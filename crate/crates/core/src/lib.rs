//! Exact closed forms for integrals of `x^a / (cos x ± cosh x)^m` over the
//! positive half-line, expressed as polynomials in `X = Γ(1/4)^4` and
//! `Y = 1/π` with rational coefficients.
//!
//! The pipeline runs entirely in exact arithmetic: contour integration turns
//! each integral into derivatives of hyperbolic lattice sums evaluated at
//! `y = π`, those sums are closed-form elements of a differential ring in the
//! Jacobi modulus `x`, and the ring elements are evaluated at `x = 1/2`.
//! The [`numerics`] module supplies the independent numerical side used to
//! certify every result.

pub mod arith;
pub mod conjecture;
pub mod contour;
pub mod elliptic_series;
pub mod error;
pub mod hyperbolic_sums;
pub mod numerics;
pub mod reference;
pub mod zring;

pub use contour::{berndt_eval, check_structure, IntegralSpec, Sign};
pub use error::{Error, Result};
pub use zring::QXYPoly;

/// Exact rational numbers.
pub type Rat = rug::Rational;
