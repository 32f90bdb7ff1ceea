use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use rug::Integer;

use crate::error::{Error, Result};
use crate::Rat;

/// Exact linear combination of `Γ(1/4)^g · π^{t/2}`, keyed by `(g, t)`.
/// Half-integer powers of π are stored with a doubled exponent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecialValue {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl SpecialValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Rat, g_exp: i64, two_pi_exp: i64) -> Self {
        let mut s = Self::zero();
        s.add_term(g_exp, two_pi_exp, c);
        s
    }

    pub fn add_term(&mut self, g_exp: i64, two_pi_exp: i64, c: Rat) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry((g_exp, two_pi_exp)).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&(g_exp, two_pi_exp));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        for (&(g, t), v) in &self.terms {
            out.add_term(g, t, Rat::from(v * c));
        }
        out
    }

    /// Multiplies by `π^k`.
    pub fn mul_pi_pow(&self, k: i64) -> Self {
        SpecialValue { terms: self.terms.iter().map(|(&(g, t), v)| ((g, t + 2 * k), v.clone())).collect() }
    }

    /// Converts to a polynomial in `X = Γ(1/4)^4`, `Y = 1/π` after
    /// multiplying by `π^{pi_shift}`.
    pub fn to_qxy(&self, pi_shift: i64) -> Result<QXYPoly> {
        let mut out = QXYPoly::zero();
        for (&(g, t), c) in &self.terms {
            let t = t + 2 * pi_shift;
            if g.rem_euclid(4) != 0 || g < 0 {
                return Err(Error::NotInQxy(format!("Γ(1/4) exponent {g} is not a nonnegative multiple of 4")));
            }
            if t % 2 != 0 {
                return Err(Error::NotInQxy(format!("π exponent {t}/2 is not an integer")));
            }
            out.add_term((g / 4) as u32, (-t / 2) as i32, c.clone());
        }
        Ok(out)
    }
}

impl Add for &SpecialValue {
    type Output = SpecialValue;
    fn add(self, rhs: &SpecialValue) -> SpecialValue {
        let mut out = self.clone();
        for (&(g, t), c) in &rhs.terms {
            out.add_term(g, t, c.clone());
        }
        out
    }
}

impl Mul for &SpecialValue {
    type Output = SpecialValue;
    fn mul(self, rhs: &SpecialValue) -> SpecialValue {
        let mut out = SpecialValue::zero();
        for (&(g1, t1), c1) in &self.terms {
            for (&(g2, t2), c2) in &rhs.terms {
                out.add_term(g1 + g2, t1 + t2, Rat::from(c1 * c2));
            }
        }
        out
    }
}

fn pochhammer(a: &Rat, n: u32) -> Rat {
    let mut acc = Rat::from(1);
    for i in 0..n {
        acc *= Rat::from(a + i);
    }
    acc
}

/// Exact value of `z^{(n)}(1/2)`.
///
/// `z^{(n)}(1/2) = (1/2)_n² √π / Γ(n/2 + 3/4)²`; shifting the Gamma argument
/// down to `3/4` or `5/4` and using `Γ(3/4) = √2 π / Γ(1/4)` leaves a
/// rational multiple of `Γ(1/4)² π^{-3/2}` (even `n`) or `Γ(1/4)^{-2} π^{1/2}`
/// (odd `n`).
pub fn zjet_at_half(n: u32) -> SpecialValue {
    let half_n = pochhammer(&Rat::from((1, 2)), n);
    let num = Rat::from(half_n.square_ref());
    let t = n / 2;
    if n % 2 == 0 {
        let p = pochhammer(&Rat::from((3, 4)), t);
        let c = num / (Rat::from(p.square_ref()) * 2u32);
        SpecialValue::term(c, 2, -3)
    } else {
        let p = pochhammer(&Rat::from((5, 4)), t);
        let c = num * 16u32 / Rat::from(p.square_ref());
        SpecialValue::term(c, -2, 1)
    }
}

/// Polynomial in `X = Γ(1/4)^4` and `Y = 1/π` with rational coefficients,
/// keyed by `(deg X, deg Y)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QXYPoly {
    terms: BTreeMap<(u32, i32), Rat>,
}

impl QXYPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, i32, Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (x, y, c) in it {
            p.add_term(x, y, c);
        }
        p
    }

    pub fn add_term(&mut self, x_deg: u32, y_deg: i32, c: Rat) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry((x_deg, y_deg)).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&(x_deg, y_deg));
        }
    }

    /// Terms in `(deg X, deg Y)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x_deg: u32, y_deg: i32) -> Rat {
        self.terms.get(&(x_deg, y_deg)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &QXYPoly) -> QXYPoly {
        let mut out = self.clone();
        for (&(x, y), c) in &other.terms {
            out.add_term(x, y, Rat::from(-c));
        }
        out
    }

    /// LaTeX rendering with `Γ(1/4)` and `π`, one `\frac` per term, the
    /// denominator split as `odd \cdot 2^{k}`.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(xd, yd), c)) in self.terms.iter().enumerate() {
            if *c < 0 {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let num_int = Integer::from(c.numer().abs_ref());
            let mut num = String::new();
            if num_int != 1 || (xd == 0 && yd >= 0) {
                num.push_str(&num_int.to_string());
            }
            if xd > 0 {
                num.push_str(&format!("\\Gamma^{{{}}}(1/4)", 4 * xd));
            }
            if yd < 0 {
                num.push_str(&pi_power(-yd));
            }
            let mut den_int = Integer::from(c.denom());
            let twos = den_int.find_one(0).unwrap_or(0);
            den_int >>= twos;
            let mut den_parts: Vec<String> = Vec::new();
            if den_int != 1 {
                den_parts.push(den_int.to_string());
            }
            match twos {
                0 => {}
                1 => den_parts.push("2".to_string()),
                k => den_parts.push(format!("2^{{{k}}}")),
            }
            let mut den = den_parts.join("\\cdot ");
            if yd > 0 {
                den.push_str(&pi_power(yd));
            }
            if den.is_empty() {
                out.push_str(&num);
            } else {
                out.push_str(&format!("\\frac{{{num}}}{{{den}}}"));
            }
        }
        out
    }
}

fn pi_power(k: i32) -> String {
    if k == 1 {
        "\\pi".to_string()
    } else {
        format!("\\pi^{{{k}}}")
    }
}

impl fmt::Display for QXYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(xd, yd), c)) in self.terms.iter().enumerate() {
            let mag = Rat::from(c.abs_ref());
            match (i, *c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{mag}")?;
            if xd > 0 {
                write!(f, "*X^{xd}")?;
            }
            if yd != 0 {
                write!(f, "*Y^{yd}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn jet_values_at_half() {
        assert_eq!(zjet_at_half(0), SpecialValue::term(rat(1, 2), 2, -3));
        assert_eq!(zjet_at_half(1), SpecialValue::term(Rat::from(4), -2, 1));
        assert_eq!(zjet_at_half(2), SpecialValue::term(rat(1, 2), 2, -3));
        assert_eq!(zjet_at_half(3), SpecialValue::term(Rat::from(36), -2, 1));
    }

    #[test]
    fn jet_values_follow_the_ode_at_half() {
        // σ z'' + σ' z' - z/4 = 0 differentiated n times, at x = 1/2:
        // z^{(n+2)} = 4 (n + 1/2)² z^{(n)}
        for n in 0..20u32 {
            let lhs = zjet_at_half(n + 2);
            let f = Rat::from((2 * n as i64 + 1) * (2 * n as i64 + 1));
            assert_eq!(lhs, zjet_at_half(n).scale(&f), "n = {n}");
        }
    }

    #[test]
    fn qxy_conversion() {
        let s = SpecialValue::term(Rat::from(1), 8, -4);
        let p = s.to_qxy(0).unwrap();
        assert_eq!(p.coeff(2, 2), 1);
        assert!(SpecialValue::term(Rat::from(1), 2, -3).to_qxy(0).is_err());
        // z z' = 2/π
        let zz = &zjet_at_half(0) * &zjet_at_half(1);
        assert_eq!(zz.to_qxy(0).unwrap(), QXYPoly::from_terms([(0, 1, Rat::from(2))]));
    }

    #[test]
    fn latex_rendering() {
        let p = QXYPoly::from_terms([(4, 4, rat(27, 5 * 4096)), (6, 8, rat(-1, 1 << 18))]);
        assert_eq!(
            p.to_latex(),
            "\\frac{27\\Gamma^{16}(1/4)}{5\\cdot 2^{12}\\pi^{4}}-\\frac{\\Gamma^{24}(1/4)}{2^{18}\\pi^{8}}"
        );
        let q = QXYPoly::from_terms([(0, 0, rat(-63, 5 * 1024)), (1, 1, rat(1, 2))]);
        assert_eq!(q.to_latex(), "-\\frac{63}{5\\cdot 2^{10}}+\\frac{\\Gamma^{4}(1/4)}{2\\pi}");
    }
}
