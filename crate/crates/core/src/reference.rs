//! Published closed forms used as regression targets, in the canonical
//! `X = Γ(1/4)^4`, `Y = 1/π` basis.

use crate::arith::pow2;
use crate::contour::{IntegralSpec, Sign};
use crate::error::{Error, Result};
use crate::zring::QXYPoly;
use crate::Rat;

/// A value written as `c · π^k · Γ(1/4)^g / Γ(3/4)^g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gamma34Form {
    pub coeff: Rat,
    pub pi_pow: i64,
    pub gamma_pow: u32,
}

impl Gamma34Form {
    /// Uses `Γ(3/4) = √2 π / Γ(1/4)`; `g` must be even so no `√2` is left.
    pub fn normalize(&self) -> Result<QXYPoly> {
        let g = self.gamma_pow;
        if g % 2 != 0 {
            return Err(Error::NotInQxy(format!("Γ(3/4)^{g} leaves a √2")));
        }
        let c = Rat::from(&self.coeff * pow2(-i64::from(g / 2)));
        let y = i64::from(g) - self.pi_pow;
        let y = i32::try_from(y).map_err(|_| Error::OutOfRange("π exponent".into()))?;
        Ok(QXYPoly::from_terms([(g / 2, y, c)]))
    }

    pub fn to_latex(&self) -> String {
        let (n, d) = (self.coeff.numer(), self.coeff.denom());
        let g = self.gamma_pow;
        format!("\\frac{{{n}\\pi^{{{}}}\\Gamma^{{{g}}}(1/4)}}{{{d}\\Gamma^{{{g}}}(3/4)}}", self.pi_pow)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PublishedValue {
    pub spec: IntegralSpec,
    pub value: QXYPoly,
    /// The form the value was originally quoted in, when it used `Γ(3/4)`.
    pub gamma34: Option<Gamma34Form>,
}

fn r(n: &str) -> Rat {
    crate::arith::parse_rat(n).expect("literal rational")
}

fn poly(terms: &[(u32, i32, &str)]) -> QXYPoly {
    QXYPoly::from_terms(terms.iter().map(|&(x, y, c)| (x, y, r(c))))
}

fn frac(n: &str, d: &str, e: u32) -> String {
    let den = rug::Integer::from(d.parse::<rug::Integer>().expect("literal")) << e;
    format!("{n}/{den}")
}

/// The four order-one values followed by the six displayed higher-order
/// examples.
pub fn published_values() -> Vec<PublishedValue> {
    let spec = |a, m, s| IntegralSpec::new(a, m, s).expect("published spec is valid");
    let plain = |s, v| PublishedValue { spec: s, value: v, gamma34: None };
    let quoted = |s, c: &str, k, g| {
        let f = Gamma34Form { coeff: r(c), pi_pow: k, gamma_pow: g };
        PublishedValue { spec: s, value: f.normalize().expect("even power"), gamma34: Some(f) }
    };
    vec![
        plain(spec(3, 1, Sign::Minus), poly(&[(2, 2, "-1/256")])),
        plain(spec(7, 1, Sign::Minus), poly(&[(4, 4, &frac("9", "1", 13))])),
        quoted(spec(5, 1, Sign::Plus), "3/256", 3, 6),
        quoted(spec(9, 1, Sign::Plus), &frac("189", "1", 12), 5, 10),
        plain(
            spec(9, 2, Sign::Plus),
            poly(&[(4, 4, &frac("-189", "5", 15)), (6, 8, &frac("9", "1", 21))]),
        ),
        plain(
            spec(9, 2, Sign::Minus),
            poly(&[(4, 4, &frac("27", "5", 12)), (6, 8, &frac("-1", "1", 18))]),
        ),
        plain(
            spec(11, 3, Sign::Minus),
            poly(&[
                (4, 4, &frac("-4455", "1", 15)),
                (6, 6, &frac("-189", "1", 20)),
                (6, 7, &frac("297", "1", 18)),
                (6, 8, &frac("-935", "1", 20)),
                (8, 12, &frac("-195", "1", 27)),
            ]),
        ),
        plain(
            spec(13, 3, Sign::Plus),
            poly(&[
                (5, 5, &frac("405405", "1", 20)),
                (7, 7, &frac("68607", "1", 27)),
                (7, 8, &frac("-107757", "1", 25)),
                (7, 9, &frac("84591", "1", 25)),
                (9, 13, &frac("17679", "1", 32)),
            ]),
        ),
        plain(
            spec(33, 2, Sign::Minus),
            poly(&[
                (16, 16, &frac("55168390953244107", "85", 36)),
                (18, 20, &frac("-135515509591329", "1", 42)),
            ]),
        ),
        plain(
            spec(33, 2, Sign::Plus),
            poly(&[
                (16, 16, &frac("-1807702666364949654069", "85", 51)),
                (18, 20, &frac("4440707733798260001", "1", 57)),
            ]),
        ),
    ]
}

/// Conjectured value of `∫_0^∞ x^9 / (cos x + cosh x)^6 dx`, a case outside
/// the range where the exact pipeline applies.
pub fn x9m6_constant() -> QXYPoly {
    poly(&[
        (0, 0, &frac("-63", "5", 10)),
        (2, 2, &frac("1071", "25", 13)),
        (2, 3, &frac("-21", "1", 12)),
        (2, 4, &frac("63", "1", 16)),
        (4, 4, &frac("-21", "125", 13)),
        (4, 5, &frac("3", "5", 13)),
        (4, 6, &frac("-161", "5", 19)),
        (4, 8, &frac("21", "1", 21)),
        (6, 8, &frac("1", "25", 19)),
        (6, 9, &frac("-1", "3", 20)),
        (6, 10, &frac("69", "5", 25)),
        (6, 11, &frac("-21", "5", 24)),
        (6, 12, &frac("63", "5", 27)),
        (8, 14, &frac("-17", "75", 31)),
        (8, 16, &frac("13", "5", 34)),
        (10, 20, &frac("3", "25", 40)),
    ])
}
