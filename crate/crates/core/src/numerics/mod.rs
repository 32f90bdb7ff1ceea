//! Arbitrary-precision numerical kernels. Every routine takes its working
//! precision explicitly, in bits; nothing reads global precision state.

mod agm;
mod eval;
mod jacobi;
mod quad;
mod reconstruct;
mod series;

pub use agm::{agm, agm_with_steps, elliptic_ke, gamma_quarter, y_of_x, z_jet_numeric, z_jets};
pub use eval::{eval_elem, eval_qxy, eval_special};
pub use jacobi::jacobi_sn_cn_dn;
pub use quad::{gauss_legendre, quad_berndt, quad_integrand, Integrand, QuadratureReport};
pub use reconstruct::{pslq, rational_reconstruct, rational_reconstruct_tol};
pub use series::sum_series;

use rug::float::Constant;
use rug::Float;

/// Arbitrary-precision real.
pub type BigFloat = Float;

/// Binary precision carrying `digits` decimal digits plus a small guard.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `10^{-digits}` at `prec` bits.
pub fn ten_pow_neg(digits: i64, prec: u32) -> Float {
    use rug::ops::Pow;
    let t = Float::with_val(prec, 10u32);
    Float::with_val(prec, t.pow(-digits as i32))
}

/// Decimal logarithm of `|v|`, or `-inf` for zero.
pub fn log10_abs(v: &Float) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = v.to_f64_exp();
    m.abs().log10() + f64::from(e) * std::f64::consts::LOG10_2
}

/// Parses a decimal or `p/q` rational string into a float.
pub fn parse_real(s: &str, prec: u32) -> Option<Float> {
    if let Some(r) = crate::arith::parse_rat(s) {
        return Some(Float::with_val(prec, r));
    }
    Float::parse(s.trim()).ok().map(|p| Float::with_val(prec, p))
}
