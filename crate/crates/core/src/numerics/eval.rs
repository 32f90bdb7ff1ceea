use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::agm::{gamma_quarter, z_jets};
use crate::error::Result;
use crate::zring::{QXYPoly, SpecialValue, ZRingElem};

/// Numeric value of a polynomial in `X = Γ(1/4)^4`, `Y = 1/π`.
pub fn eval_qxy(poly: &QXYPoly, prec: u32) -> Float {
    let wp = prec + 32;
    let g = gamma_quarter(wp);
    let x = Float::with_val(wp, g.pow(4u32));
    let y = Float::with_val(wp, Constant::Pi).recip();
    let mut acc = Float::new(wp);
    for (&(xd, yd), c) in poly.terms() {
        let t = Float::with_val(wp, c) * Float::with_val(wp, (&x).pow(xd)) * Float::with_val(wp, (&y).pow(yd));
        acc += t;
    }
    Float::with_val(prec, acc)
}

/// Numeric value of a combination of `Γ(1/4)^g π^{t/2}`.
pub fn eval_special(s: &SpecialValue, prec: u32) -> Float {
    let wp = prec + 32;
    let g = gamma_quarter(wp);
    let sqrt_pi = Float::with_val(wp, Constant::Pi).sqrt();
    let mut acc = Float::new(wp);
    for (&(ge, te), c) in s.terms() {
        let t = Float::with_val(wp, c)
            * Float::with_val(wp, (&g).pow(ge as i32))
            * Float::with_val(wp, (&sqrt_pi).pow(te as i32));
        acc += t;
    }
    Float::with_val(prec, acc)
}

/// Numeric value of a ring element at modulus `x`.
pub fn eval_elem(e: &ZRingElem, x: &Float, prec: u32) -> Result<Float> {
    let wp = prec + 32;
    let jets = z_jets(x, e.max_jet().max(1), wp)?;
    let xw = Float::with_val(wp, x);
    Ok(Float::with_val(prec, e.eval_with(&xw, &jets)))
}
