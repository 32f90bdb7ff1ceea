//! Screening of the conjectured closed forms outside the exact regime.
//!
//! Nothing here proves anything. Inside the exact regime the support claim
//! is checked on the exact value; outside it the integral is computed by
//! quadrature and an integer relation against the conjectured monomials is
//! sought with PSLQ.

use std::collections::BTreeSet;
use std::fmt;

use rug::{Float, Integer};

use crate::contour::{berndt_eval, IntegralSpec, Sign};
use crate::error::{Error, Result};
use crate::numerics::{
    eval_qxy, gamma_quarter, log10_abs, pi, pslq, quad_integrand, ten_pow_neg, Integrand,
};
use crate::reference::x9m6_constant;
use crate::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjectureId {
    /// Support of `∫ x / (cos x + cosh x)^m`.
    PlusX1,
    /// Support of `∫ x^5 / (cos x + cosh x)^m`.
    PlusX5,
    /// The closed form of `∫ x^9 / (cos x + cosh x)^6`.
    X9m6,
}

impl ConjectureId {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "plus-x1" => Some(Self::PlusX1),
            "plus-x5" => Some(Self::PlusX5),
            "x9m6" => Some(Self::X9m6),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::PlusX1 => "plus-x1",
            Self::PlusX5 => "plus-x5",
            Self::X9m6 => "x9m6",
        }
    }

    /// Power of `x` in the numerator for the two support conjectures.
    pub fn exponent(self) -> Option<u32> {
        match self {
            Self::PlusX1 => Some(1),
            Self::PlusX5 => Some(5),
            Self::X9m6 => None,
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monomial `Γ(1/4)^gamma / π^pi` with possibly negative exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaPi {
    pub gamma: i64,
    pub pi: i64,
}

impl fmt::Display for GammaPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ^{}/π^{}", self.gamma, self.pi)
    }
}

fn gp(gamma: i64, pi: i64) -> GammaPi {
    GammaPi { gamma, pi }
}

/// Conjectured monomial support at order `m`.
pub fn support(id: ConjectureId, m: u32) -> Option<BTreeSet<GammaPi>> {
    if m == 0 {
        return None;
    }
    let odd = m % 2 == 1;
    let n = i64::from(m.div_ceil(2));
    let mut s = BTreeSet::new();
    match (id, odd) {
        (ConjectureId::PlusX1, true) => {
            s.extend((1..n).map(|j| gp(8 * j - 4, 6 * j - 4)));
            s.extend((1..=n).map(|j| gp(8 * j - 4, 6 * j - 5)));
        }
        (ConjectureId::PlusX1, false) => {
            s.insert(gp(0, 0));
            s.extend((1..n).map(|j| gp(8 * j, 6 * j - 1)));
            s.extend((1..=n).map(|j| gp(8 * j, 6 * j - 2)));
        }
        (ConjectureId::PlusX5, true) => {
            s.insert(gp(4, 1));
            s.insert(gp(4, 2));
            for j in 2..=n - 3 {
                s.extend((1..=6).map(|i| gp(8 * j - 4, 6 * j - 10 + i)));
            }
            for j in 1..=3 {
                s.extend((1..=7 - 2 * j).map(|i| gp(8 * j + 8 * n - 20, 6 * j + 6 * n - 22 + i)));
            }
        }
        (ConjectureId::PlusX5, false) => {
            s.insert(gp(0, 0));
            s.extend((1..=4).map(|i| gp(8, i + 1)));
            s.extend([1, 3, 4, 5, 6].map(|i| gp(16, i + 5)));
            for j in 3..=n - 2 {
                s.extend((1..=6).map(|i| gp(8 * j, 6 * j - 7 + i)));
            }
            for j in 1..=3 {
                s.extend((1..=7 - 2 * j).map(|i| gp(8 * j + 8 * n - 16, 6 * j + 6 * n - 19 + i)));
            }
        }
        (ConjectureId::X9m6, _) => return None,
    }
    Some(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScreenMethod {
    /// The exact pipeline applies and its result was inspected.
    Exact,
    /// Quadrature plus an integer relation search.
    Pslq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    InSupport,
    OutsideSupport,
    /// No relation was found at the working precision.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct SupportReport {
    pub id: ConjectureId,
    pub a: u32,
    pub m: u32,
    pub method: ScreenMethod,
    pub verdict: Verdict,
    /// Recovered value as rational multiples of the monomials.
    pub terms: Vec<(GammaPi, Rat)>,
    pub digits: u32,
}

/// Checks the support conjecture `id` at order `m`, using `digits` of
/// quadrature when the exact pipeline does not apply.
pub fn screen_support(id: ConjectureId, m: u32, digits: u32) -> Result<SupportReport> {
    let a = id.exponent().ok_or_else(|| Error::InvalidSpec(format!("{id} is not a support conjecture")))?;
    let supp = support(id, m).ok_or_else(|| Error::InvalidSpec(format!("no support for order {m}")))?;
    if let Ok(spec) = IntegralSpec::new(a, m, Sign::Plus) {
        let v = berndt_eval(&spec)?;
        let terms: Vec<(GammaPi, Rat)> = v
            .terms()
            .map(|(&(x, y), c)| (gp(4 * i64::from(x), i64::from(y)), c.clone()))
            .collect();
        let inside = terms.iter().all(|(g, _)| supp.contains(g));
        return Ok(SupportReport {
            id,
            a,
            m,
            method: ScreenMethod::Exact,
            verdict: if inside { Verdict::InSupport } else { Verdict::OutsideSupport },
            terms,
            digits: 0,
        });
    }

    let q = quad_integrand(&Integrand::new(a, m, Sign::Plus)?, digits)?;
    let prec = q.precision;
    let g = gamma_quarter(prec);
    let p = pi(prec);
    let basis: Vec<GammaPi> = supp.into_iter().collect();
    let value_of = |t: &GammaPi| {
        let gv = Float::with_val(prec, g.pow_ref_i64(t.gamma));
        let pv = Float::with_val(prec, p.pow_ref_i64(t.pi));
        gv / pv
    };
    let mut xs = vec![Float::with_val(prec, &q.value)];
    xs.extend(basis.iter().map(value_of));
    // Round everything to the accuracy the quadrature actually delivers.
    let xs: Vec<Float> = xs.into_iter().map(|v| Float::with_val(crate::numerics::bits_for_digits(digits), v)).collect();
    let tol = ten_pow_neg(i64::from(digits) * 9 / 10, xs[0].prec());
    let inconclusive = SupportReport {
        id,
        a,
        m,
        method: ScreenMethod::Pslq,
        verdict: Verdict::Inconclusive,
        terms: Vec::new(),
        digits,
    };
    let Some(rel) = pslq(&xs, &tol, 1e300) else {
        return Ok(inconclusive);
    };
    if rel[0] == 0 || !plausible_height(&rel, digits) {
        return Ok(inconclusive);
    }
    let r0 = Rat::from(&rel[0]);
    let terms = basis
        .into_iter()
        .zip(rel.iter().skip(1))
        .filter(|(_, r)| **r != 0)
        .map(|(t, r)| (t, -Rat::from(r) / &r0))
        .collect();
    Ok(SupportReport { id, a, m, method: ScreenMethod::Pslq, verdict: Verdict::InSupport, terms, digits })
}

/// A relation among `n` numbers known to `d` digits is only meaningful if
/// its coefficients need clearly fewer than `d` digits in total; random
/// vectors admit spurious relations of height about `10^{d/n}`.
fn plausible_height(rel: &[Integer], digits: u32) -> bool {
    let height = rel.iter().map(|r| r.significant_bits()).max().unwrap_or(0);
    let digits_used = f64::from(height) * std::f64::consts::LOG10_2 * rel.len() as f64;
    digits_used < 0.75 * f64::from(digits)
}

trait PowI64 {
    fn pow_ref_i64(&self, e: i64) -> Float;
}

impl PowI64 for Float {
    fn pow_ref_i64(&self, e: i64) -> Float {
        use rug::ops::Pow;
        let mag = Float::with_val(self.prec(), self.pow(e.unsigned_abs()));
        if e < 0 {
            mag.recip()
        } else {
            mag
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstantReport {
    pub quadrature: Float,
    pub conjectured: Float,
    /// `-log10` of the absolute difference.
    pub agreement_digits: f64,
}

/// Compares quadrature of `∫ x^9 / (cos x + cosh x)^6` with the
/// conjectured closed form.
pub fn screen_x9m6(digits: u32) -> Result<ConstantReport> {
    let q = quad_integrand(&Integrand::new(9, 6, Sign::Plus)?, digits)?;
    let c = eval_qxy(&x9m6_constant(), q.precision);
    let diff = Float::with_val(q.precision, &q.value - &c);
    Ok(ConstantReport { agreement_digits: -log10_abs(&diff), quadrature: q.value, conjectured: c })
}
