//! End-to-end exact evaluation of `∫_0^∞ x^a / (cos x ± cosh x)^m dx`.
//!
//! Integrating around the boundary of a quarter disc turns the integral
//! into a finite combination of `y`-derivatives of hyperbolic sums at
//! `y = π`, weighted by powers of π and by the Laurent coefficients of
//! the integrand's denominator at its poles. Each sum is replaced by its
//! z-ring closed form and evaluated exactly at `x = 1/2`.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{binomial, gamma_lm, pow2, rat_factorial};
use crate::error::{Error, Result};
use crate::hyperbolic_sums::{reduce_power, BaseLibrary, FamilyTag, SumFamily};
use crate::zring::{QXYPoly, SpecialValue, ZRingElem};
use crate::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "plus" | "+" => Some(Sign::Plus),
            "minus" | "-" => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An integral in the regime where the value lies in `Q[X, Y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralSpec {
    a: u32,
    m: u32,
    sign: Sign,
}

impl IntegralSpec {
    /// Plus sign: `a = 4p + 1` with `p ≥ ⌊m/2⌋`. Minus sign: `a > 2m` and
    /// `a - 2m ≡ 1 (mod 4)`.
    pub fn new(a: u32, m: u32, sign: Sign) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("order m must be at least 1".into()));
        }
        match sign {
            Sign::Plus => {
                if a % 4 != 1 {
                    return Err(Error::InvalidSpec(format!("plus sign needs a ≡ 1 (mod 4), got a = {a}")));
                }
                let p = (a - 1) / 4;
                if p < m / 2 {
                    return Err(Error::InvalidSpec(format!(
                        "plus sign needs p >= floor(m/2) where a = 4p+1; got p = {p}, m = {m}"
                    )));
                }
            }
            Sign::Minus => {
                if a <= 2 * m || (a - 2 * m) % 4 != 1 {
                    return Err(Error::InvalidSpec(format!(
                        "minus sign needs a - 2m ≡ 1 (mod 4) with a > 2m; got a - 2m = {}",
                        i64::from(a) - 2 * i64::from(m)
                    )));
                }
            }
        }
        Ok(IntegralSpec { a, m, sign })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }
}

impl fmt::Display for IntegralSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "x^{}/(cos x {op} cosh x)^{}", self.a, self.m)
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Gaussian {
    re: Rat,
    im: Rat,
}

impl Gaussian {
    fn new(re: Rat, im: Rat) -> Self {
        Gaussian { re, im }
    }

    fn mul(&self, o: &Gaussian) -> Gaussian {
        Gaussian::new(
            Rat::from(&self.re * &o.re) - Rat::from(&self.im * &o.im),
            Rat::from(&self.re * &o.im) + Rat::from(&self.im * &o.re),
        )
    }

    fn pow(&self, e: u32) -> Gaussian {
        let mut acc = Gaussian::new(Rat::from(1), Rat::new());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn i_pow(e: u32) -> Gaussian {
        match e % 4 {
            0 => Gaussian::new(Rat::from(1), Rat::new()),
            1 => Gaussian::new(Rat::new(), Rat::from(1)),
            2 => Gaussian::new(Rat::from(-1), Rat::new()),
            _ => Gaussian::new(Rat::new(), Rat::from(-1)),
        }
    }

    fn div(&self, o: &Gaussian) -> Gaussian {
        let norm = Rat::from(o.re.square_ref()) + Rat::from(o.im.square_ref());
        let conj = Gaussian::new(o.re.clone(), Rat::from(-&o.im));
        let n = self.mul(&conj);
        Gaussian::new(n.re / &norm, n.im / norm)
    }
}

/// The constant multiplying the integral on the contour side:
/// `2^{m-2}(1 - i^{a+1})/(1+i)^{a-1}` for the plus sign and
/// `2^{m-2}(1 - (-1)^m i^{a+1})/(i^m (1+i)^{a-1})` for the minus sign.
pub fn prefactor(spec: &IntegralSpec) -> Result<Rat> {
    let one = Gaussian::new(Rat::from(1), Rat::new());
    let one_plus_i = Gaussian::new(Rat::from(1), Rat::from(1));
    let ia = Gaussian::i_pow(spec.a + 1);
    let (num, den) = match spec.sign {
        Sign::Plus => (
            Gaussian::new(Rat::from(&one.re - &ia.re), Rat::from(-&ia.im)),
            one_plus_i.pow(spec.a - 1),
        ),
        Sign::Minus => {
            let s = if spec.m % 2 == 0 { 1 } else { -1 };
            (
                Gaussian::new(Rat::from(1) - Rat::from(&ia.re * s), Rat::from(&ia.im * -s)),
                Gaussian::i_pow(spec.m).mul(&one_plus_i.pow(spec.a - 1)),
            )
        }
    };
    let q = num.div(&den);
    if q.im != 0 || q.re == 0 {
        return Err(Error::InvalidSpec(format!("{spec}: contour constant {} + {}i is not a nonzero real", q.re, q.im)));
    }
    Ok(q.re * pow2(i64::from(spec.m) - 2))
}

/// The sum family attached to a spec and the sign it enters with:
/// `Σ (-1)^{mn} (·)^P / (sinh or cosh)^m`, which is minus the alternating
/// family for odd `m` and the plain family for even `m`.
fn family_of(spec: &IntegralSpec, p: u32) -> (SumFamily, i32) {
    let odd = spec.m % 2 == 1;
    let tag = match (spec.sign, odd) {
        (Sign::Plus, true) => FamilyTag::Ctilde,
        (Sign::Plus, false) => FamilyTag::Cprime,
        (Sign::Minus, true) => FamilyTag::Sbar,
        (Sign::Minus, false) => FamilyTag::S,
    };
    (SumFamily::any(tag, p, spec.m), if odd { -1 } else { 1 })
}

/// Contour side as `Σ_k π^k · e_k` with ring elements `e_k` to be read at
/// `x = 1/2`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedElem {
    pub parts: BTreeMap<i64, ZRingElem>,
}

impl WeightedElem {
    pub fn eval_at_half(&self) -> Result<SpecialValue> {
        let mut out = SpecialValue::zero();
        for (&k, e) in &self.parts {
            out = &out + &e.eval_at_half()?.mul_pi_pow(k);
        }
        Ok(out)
    }
}

/// One term of the contour side before any closed form is substituted.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourTerm {
    pub weight: Rat,
    pub pi_pow: i64,
    pub deriv_order: u32,
    pub family: SumFamily,
}

/// `Σ_l Σ_j (-1)^{l+1} 2^l γ_{l,m} / (m-1-2l-j)! · C(a,j) · π^{a+1-j} ·
/// d^{m-1-2l-j}/dy^{m-1-2l-j}` of the family with exponent `a+1+2l-m`.
pub fn contour_terms(spec: &IntegralSpec) -> Vec<ContourTerm> {
    let (a, m) = (spec.a, spec.m);
    let mut out = Vec::new();
    for l in 0..=(m - 1) / 2 {
        let g = gamma_lm(l, m) * pow2(i64::from(l)) * Rat::from(if l % 2 == 0 { -1 } else { 1 });
        let p = a + 1 + 2 * l - m;
        let (family, fsign) = family_of(spec, p);
        for j in 0..=(m - 1 - 2 * l) {
            let r = m - 1 - 2 * l - j;
            let w = Rat::from(&g * Rat::from(binomial(a, j))) / rat_factorial(r) * Rat::from(fsign);
            if w == 0 {
                continue;
            }
            out.push(ContourTerm {
                weight: w,
                pi_pow: i64::from(a) + 1 - i64::from(j),
                deriv_order: r,
                family,
            });
        }
    }
    out
}

pub fn rhs_assembly_with(spec: &IntegralSpec, lib: &BaseLibrary) -> Result<WeightedElem> {
    let mut out = WeightedElem::default();
    for t in contour_terms(spec) {
        let mut e = ZRingElem::zero();
        for red in reduce_power(&t.family)? {
            let d = lib.derivative(t.family.tag, red.base_index, red.deriv_order + t.deriv_order)?;
            e = &e + &d.scale(&red.coeff);
        }
        let slot = out.parts.entry(t.pi_pow).or_default();
        *slot = &*slot + &e.scale(&t.weight);
    }
    out.parts.retain(|_, e| !e.is_zero());
    Ok(out)
}

pub fn rhs_assembly(spec: &IntegralSpec) -> Result<WeightedElem> {
    rhs_assembly_with(spec, BaseLibrary::global())
}

/// Exact value of the integral using the given base library.
pub fn berndt_eval_with(spec: &IntegralSpec, lib: &BaseLibrary) -> Result<QXYPoly> {
    // Collect rational weights per (base, derivative order, π power) so that
    // each derivative is evaluated at 1/2 once.
    let mut weights: BTreeMap<(FamilyTag, u32, u32), BTreeMap<i64, Rat>> = BTreeMap::new();
    for t in contour_terms(spec) {
        for red in reduce_power(&t.family)? {
            let key = (t.family.tag, red.base_index, red.deriv_order + t.deriv_order);
            let slot = weights.entry(key).or_default().entry(t.pi_pow).or_default();
            *slot += Rat::from(&t.weight * &red.coeff);
        }
    }
    let mut total = SpecialValue::zero();
    for ((tag, index, order), per_pi) in weights {
        let v = lib.derivative(tag, index, order)?.eval_at_half()?;
        for (k, w) in per_pi {
            if w != 0 {
                total = &total + &v.scale(&w).mul_pi_pow(k);
            }
        }
    }
    let c = prefactor(spec)?;
    total.scale(&Rat::from(c.recip_ref())).to_qxy(0)
}

/// Exact value of the integral as a polynomial in `X = Γ(1/4)^4`, `Y = 1/π`.
pub fn berndt_eval(spec: &IntegralSpec) -> Result<QXYPoly> {
    berndt_eval_with(spec, BaseLibrary::global())
}

/// Degree window for the monomials `X^i Y^j` of a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureWindow {
    pub x_min: i64,
    pub x_max: i64,
    /// Required parity of the X degree.
    pub x_parity: i64,
    pub y_min: i64,
    pub y_max: i64,
}

impl StructureWindow {
    pub fn contains(&self, x: i64, y: i64) -> bool {
        (self.x_min..=self.x_max).contains(&x)
            && x.rem_euclid(2) == self.x_parity
            && (self.y_min..=self.y_max).contains(&y)
    }
}

pub fn structure_window(spec: &IntegralSpec) -> StructureWindow {
    let a = i64::from(spec.a);
    let m = i64::from(spec.m);
    match spec.sign {
        Sign::Plus => {
            let p = (a - 1) / 4;
            StructureWindow {
                x_min: 2 * p - m + 2,
                x_max: 2 * p + m,
                x_parity: m % 2,
                y_min: 2 * p - m + 2,
                y_max: 2 * p + 3 * m - 2,
            }
        }
        Sign::Minus => StructureWindow {
            x_min: (a + 3) / 2 - m,
            x_max: (a - 1) / 2 + m,
            x_parity: 0,
            y_min: (a + 3) / 2 - m,
            y_max: (a - 5) / 2 + 3 * m,
        },
    }
}

/// Whether every monomial of `poly` lies in the window of `spec`.
pub fn check_structure(poly: &QXYPoly, spec: &IntegralSpec) -> bool {
    let w = structure_window(spec);
    poly.terms().all(|(&(x, y), _)| w.contains(i64::from(x), i64::from(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn spec(a: u32, m: u32, s: Sign) -> IntegralSpec {
        IntegralSpec::new(a, m, s).unwrap()
    }

    #[test]
    fn validity_rules() {
        assert!(IntegralSpec::new(5, 1, Sign::Plus).is_ok());
        assert!(IntegralSpec::new(3, 1, Sign::Plus).is_err());
        assert!(IntegralSpec::new(1, 3, Sign::Plus).is_err());
        assert!(IntegralSpec::new(5, 3, Sign::Plus).is_ok());
        assert!(IntegralSpec::new(3, 1, Sign::Minus).is_ok());
        assert!(IntegralSpec::new(5, 1, Sign::Minus).is_err());
        assert!(IntegralSpec::new(1, 1, Sign::Minus).is_err());
        assert!(IntegralSpec::new(9, 2, Sign::Minus).is_ok());
        assert!(IntegralSpec::new(5, 0, Sign::Plus).is_err());
    }

    #[test]
    fn prefactor_values() {
        assert_eq!(prefactor(&spec(5, 1, Sign::Plus)).unwrap(), rat(-1, 4));
        assert_eq!(prefactor(&spec(3, 1, Sign::Minus)).unwrap(), rat(-1, 2));
        for p in 0..8u32 {
            for m in 1..6u32 {
                if let Ok(s) = IntegralSpec::new(4 * p + 1, m, Sign::Plus) {
                    let sign = if p % 2 == 0 { 1 } else { -1 };
                    let want = pow2(i64::from(m) - 1 - 2 * i64::from(p)) * Rat::from(sign);
                    assert_eq!(prefactor(&s).unwrap(), want, "{s}");
                }
            }
        }
    }

    #[test]
    fn first_plus_value() {
        let v = berndt_eval(&spec(5, 1, Sign::Plus)).unwrap();
        assert_eq!(v, QXYPoly::from_terms([(3, 3, rat(3, 2048))]));
    }

    #[test]
    fn first_minus_value() {
        let v = berndt_eval(&spec(3, 1, Sign::Minus)).unwrap();
        assert_eq!(v, QXYPoly::from_terms([(2, 2, rat(-1, 256))]));
    }

    #[test]
    fn windows() {
        let w = structure_window(&spec(9, 2, Sign::Minus));
        assert_eq!((w.x_min, w.x_max, w.y_min, w.y_max), (4, 6, 4, 8));
        assert!(w.contains(4, 4) && w.contains(6, 8) && !w.contains(5, 5));
        let w = structure_window(&spec(13, 3, Sign::Plus));
        assert!(w.contains(5, 5) && w.contains(9, 13) && !w.contains(8, 10));
    }
}
