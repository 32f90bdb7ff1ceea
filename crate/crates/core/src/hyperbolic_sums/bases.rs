use super::ansatz::{AnsatzShape, Template};
use super::library::BaseLibrary;
use crate::arith::pow2;
use crate::elliptic_series::{p_poly, q_poly};
use crate::error::{Error, Result};
use crate::zring::{MonoKey, PolyX, RatFunX, VFactor, ZRingElem};
use crate::Rat;

/// `Σ (-1)^{n-1} ñ^{2s+1} / cosh(ñ y) = (-1)^s / 2^{2s+2} · z^{2s+2} p_{2s+1}(x) v`
pub fn ctilde_base(s: u32) -> ZRingElem {
    let p = p_poly(2 * s as usize + 1).expect("odd index");
    let sign = if s % 2 == 0 { 1 } else { -1 };
    let c = pow2(-(2 * i64::from(s) + 2)) * Rat::from(sign);
    ZRingElem::monomial(MonoKey::new(VFactor::V, vec![2 * s + 2]), RatFunX::from_poly(p.scale(&c)))
}

/// `Σ ñ^{2s} / cosh²(ñ y) = (-1)^s / (2^{2s+1} s) · σ z^{2s+1} (z q'_{2s} + 2s z' q_{2s})`
pub fn cprime_base(s: u32) -> Result<ZRingElem> {
    if s == 0 {
        return Err(Error::OutOfRange("the cosh² base needs s >= 1".into()));
    }
    let q = q_poly(2 * s as usize).expect("even index");
    let sign = if s % 2 == 0 { 1 } else { -1 };
    let c = pow2(-(2 * i64::from(s) + 1)) * Rat::from(sign) / Rat::from(s);
    let sigma = PolyX::sigma();
    let t1 = (&sigma * &q.derivative()).scale(&c);
    let t2 = (&sigma * &q).scale(&(c * Rat::from(2 * s)));
    let mut e = ZRingElem::monomial(MonoKey::new(VFactor::One, vec![2 * s + 2]), RatFunX::from_poly(t1));
    e.add_term(MonoKey::new(VFactor::One, vec![2 * s + 1, 1]), RatFunX::from_poly(t2));
    Ok(e)
}

/// `Σ (-1)^{n-1} n^{2s+1} / sinh(n y)`, fitted and certified.
pub fn sbar_base(s: u32) -> Result<ZRingElem> {
    Ok((*BaseLibrary::global().base(super::FamilyTag::Sbar, 2 * s + 1)?).clone())
}

/// `Σ n^{2s} / sinh²(n y)`, fitted and certified.
pub fn s2_base(s: u32) -> Result<ZRingElem> {
    Ok((*BaseLibrary::global().base(super::FamilyTag::S, 2 * s)?).clone())
}

/// Default starting σ-degree bound for the fitted families.
pub fn default_sigma_bound(s: u32) -> u32 {
    s.div_ceil(2) + 1
}

/// `z^{2s+2} Q[σ] σ'^{[s even]}`
pub fn sbar_shape(s: u32, bound: u32) -> AnsatzShape {
    AnsatzShape { templates: vec![Template::new(2 * s + 2, &[], bound, s % 2 == 0, false)] }
}

/// Shape of `Σ n^{2s}/sinh²(n y)`:
/// `s = 1`: `z⁴Q[σ] + z³z'Q[σ]σ' + z²z'²Q[σ]`;
/// `s` odd: `z^{2s+2}Q[σ] + z^{2s+1}z'Q[σ]σ'`;
/// `s` even: `z^{2s+2}Q[σ]σ' + z^{2s+1}z'Q[σ]`.
pub fn s2_shape(s: u32, bound: u32) -> AnsatzShape {
    let odd = s % 2 == 1;
    let mut templates = vec![
        Template::new(2 * s + 2, &[], bound, !odd, false),
        Template::new(2 * s + 1, &[(1, 1)], bound, odd, false),
    ];
    if s == 1 {
        templates.push(Template::new(2, &[(1, 2)], bound, false, false));
    }
    AnsatzShape { templates }
}

/// `z^{2s+2} Q[σ] σ'^{[s odd]} v`
pub fn ctilde_shape(s: u32, bound: u32) -> AnsatzShape {
    AnsatzShape { templates: vec![Template::new(2 * s + 2, &[], bound, s % 2 == 1, true)] }
}

/// `s` even: `z^{2s+2}Q[σ]σ' + z^{2s+1}z'Q[σ]`; `s` odd: the σ' moves.
pub fn cprime_shape(s: u32, bound: u32) -> AnsatzShape {
    let odd = s % 2 == 1;
    AnsatzShape {
        templates: vec![
            Template::new(2 * s + 2, &[], bound, !odd, false),
            Template::new(2 * s + 1, &[(1, 1)], bound, odd, false),
        ],
    }
}
