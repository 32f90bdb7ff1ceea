use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;

use crate::Rat;

/// Dense polynomial over Q in the modulus variable `x`. Coefficient `i`
/// multiplies `x^i`; trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyX {
    coeffs: Vec<Rat>,
}

impl PolyX {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rat::from(v)).collect())
    }

    pub fn zero() -> Self {
        PolyX { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::from(1))
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `σ = x(1 - x)`
    pub fn sigma() -> Self {
        Self::from_ints(&[0, 1, -1])
    }

    /// `σ' = 1 - 2x`
    pub fn sigma_prime() -> Self {
        Self::from_ints(&[1, -2])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if *c == 0 {
            return Self::zero();
        }
        PolyX { coeffs: self.coeffs.iter().map(|a| Rat::from(a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rat::from(c * i as u32))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_float(&self, x: &Float) -> Float {
        let prec = x.prec();
        let mut acc = Float::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += Float::with_val(prec, c);
        }
        acc
    }

    /// Sum of the coefficients, i.e. the value at `x = 1`.
    pub fn value_at_one(&self) -> Rat {
        let mut acc = Rat::new();
        for c in &self.coeffs {
            acc += c;
        }
        acc
    }

    /// `p(1 - x)`
    pub fn reflect(&self) -> Self {
        let one_minus_x = Self::from_ints(&[1, -1]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &one_minus_x) + &Self::constant(c.clone());
        }
        acc
    }

    /// Divides by `x`; the constant coefficient must vanish.
    pub(crate) fn div_x(&self) -> Self {
        debug_assert!(self.coeff(0) == 0);
        PolyX { coeffs: self.coeffs.iter().skip(1).cloned().collect() }
    }

    /// Divides by `x - 1`; `p(1)` must vanish.
    pub(crate) fn div_x_minus_one(&self) -> Self {
        let n = self.coeffs.len();
        if n == 0 {
            return Self::zero();
        }
        // synthetic division from the top
        let mut out = vec![Rat::new(); n - 1];
        let mut carry = Rat::new();
        for i in (1..n).rev() {
            carry += &self.coeffs[i];
            out[i - 1] = carry.clone();
        }
        debug_assert!(Rat::from(&carry + &self.coeffs[0]) == 0);
        Self::new(out)
    }

    /// Writes `p` as `a(σ) + σ'·b(σ)`, using `p(x) ± p(1 - x)` to separate the
    /// symmetric and antisymmetric parts.
    pub fn sigma_split(&self) -> (PolyX, PolyX) {
        let r = self.reflect();
        let even = (self + &r).scale(&Rat::from((1, 2)));
        let odd = (self - &r).scale(&Rat::from((1, 2)));
        let sp = Self::sigma_prime();
        let odd_quot = odd.exact_div(&sp).expect("antisymmetric part vanishes at 1/2");
        (even.in_sigma().expect("symmetric"), odd_quot.in_sigma().expect("symmetric"))
    }

    /// Re-expresses a polynomial symmetric under `x -> 1 - x` as a polynomial
    /// in `σ`. Returns `None` if it is not symmetric.
    pub fn in_sigma(&self) -> Option<PolyX> {
        if *self != self.reflect() {
            return None;
        }
        let sigma = Self::sigma();
        let mut rest = self.clone();
        let mut out = Vec::new();
        while let Some(d) = rest.degree() {
            // peel off the constant term, then divide by σ
            let c0 = rest.coeff(0);
            out.push(c0.clone());
            rest = &rest - &Self::constant(c0);
            if rest.is_zero() {
                break;
            }
            debug_assert!(d >= 2);
            rest = rest.exact_div(&sigma)?;
        }
        Some(PolyX::new(out))
    }

    /// Substitutes `σ = x(1 - x)` into a polynomial in `σ`.
    pub fn compose_sigma(&self) -> PolyX {
        let sigma = Self::sigma();
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &sigma) + &Self::constant(c.clone());
        }
        acc
    }

    /// Exact polynomial division; `None` on a nonzero remainder.
    pub fn exact_div(&self, d: &PolyX) -> Option<PolyX> {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(nd) = self.degree() else {
            return Some(Self::zero());
        };
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![Rat::new(); nd - dd + 1];
        let lead = &d.coeffs[dd];
        for i in (0..=nd - dd).rev() {
            let c = Rat::from(&rem[i + dd] / lead);
            if c != 0 {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= Rat::from(&c * dc);
                }
            }
            q[i] = c;
        }
        if rem.iter().any(|c| *c != 0) {
            return None;
        }
        Some(PolyX::new(q))
    }
}

impl Add for &PolyX {
    type Output = PolyX;
    fn add(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyX::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyX {
    type Output = PolyX;
    fn sub(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyX::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &PolyX {
    type Output = PolyX;
    fn mul(self, rhs: &PolyX) -> PolyX {
        if self.is_zero() || rhs.is_zero() {
            return PolyX::zero();
        }
        let mut out = vec![Rat::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rat::from(a * b);
            }
        }
        PolyX::new(out)
    }
}

impl Neg for &PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        PolyX { coeffs: self.coeffs.iter().map(|c| Rat::from(-c)).collect() }
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let mag = Rat::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
