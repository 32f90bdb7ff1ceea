use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::Float;

use super::PolyX;
use crate::Rat;

/// Rational function `num / (x^i (x-1)^j)`.
///
/// Every denominator produced by the ring (powers of `v`, the second jet of
/// `v`) divides a power of `σ = -x(x-1)`, so only these two linear factors
/// ever appear. The representation is kept reduced: the numerator is not
/// divisible by a factor present in the denominator, which makes the
/// denominator monic and `gcd(num, den) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatFunX {
    num: PolyX,
    x_pow: u32,
    xm1_pow: u32,
}

impl RatFunX {
    pub fn new(num: PolyX, x_pow: u32, xm1_pow: u32) -> Self {
        let mut r = RatFunX { num, x_pow, xm1_pow };
        r.normalize();
        r
    }

    pub fn from_poly(num: PolyX) -> Self {
        RatFunX { num, x_pow: 0, xm1_pow: 0 }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(PolyX::constant(c))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::from(1))
    }

    /// `p / σ^k`
    pub fn over_sigma_pow(p: PolyX, k: u32) -> Self {
        let p = if k % 2 == 1 { -&p } else { p };
        Self::new(p, k, k)
    }

    pub fn num(&self) -> &PolyX {
        &self.num
    }

    pub fn den_exponents(&self) -> (u32, u32) {
        (self.x_pow, self.xm1_pow)
    }

    pub fn den(&self) -> PolyX {
        &PolyX::x().pow(self.x_pow) * &PolyX::from_ints(&[-1, 1]).pow(self.xm1_pow)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.x_pow == 0 && self.xm1_pow == 0
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.x_pow = 0;
            self.xm1_pow = 0;
            return;
        }
        while self.x_pow > 0 && self.num.coeff(0) == 0 {
            self.num = self.num.div_x();
            self.x_pow -= 1;
        }
        while self.xm1_pow > 0 && self.num.value_at_one() == 0 {
            self.num = self.num.div_x_minus_one();
            self.xm1_pow -= 1;
        }
    }

    fn lift(&self, x_pow: u32, xm1_pow: u32) -> PolyX {
        let mut p = self.num.clone();
        for _ in self.x_pow..x_pow {
            p = &p * &PolyX::x();
        }
        let xm1 = PolyX::from_ints(&[-1, 1]);
        for _ in self.xm1_pow..xm1_pow {
            p = &p * &xm1;
        }
        p
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if *c == 0 {
            return Self::zero();
        }
        RatFunX { num: self.num.scale(c), ..*self }
    }

    pub fn derivative(&self) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(self.num.derivative());
        }
        // (N / (x^i (x-1)^j))' = (N' x (x-1) - N (i (x-1) + j x)) / (x^{i+1} (x-1)^{j+1})
        let i = Rat::from(self.x_pow);
        let j = Rat::from(self.xm1_pow);
        let xx1 = PolyX::from_ints(&[0, -1, 1]);
        let lin = PolyX::new(vec![-i.clone(), i + j]);
        let num = &(&self.num.derivative() * &xx1) - &(&self.num * &lin);
        Self::new(num, self.x_pow + 1, self.xm1_pow + 1)
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let mut den = Rat::from(1);
        for _ in 0..self.x_pow {
            den *= x;
        }
        let xm1 = Rat::from(x - 1u32);
        for _ in 0..self.xm1_pow {
            den *= &xm1;
        }
        if den == 0 {
            return None;
        }
        Some(self.num.eval(x) / den)
    }

    pub fn eval_float(&self, x: &Float) -> Float {
        let prec = x.prec();
        let mut v = self.num.eval_float(x);
        if self.x_pow > 0 {
            v /= Float::with_val(prec, x.pow(self.x_pow));
        }
        if self.xm1_pow > 0 {
            let xm1 = Float::with_val(prec, x - 1u32);
            v /= Float::with_val(prec, (&xm1).pow(self.xm1_pow));
        }
        v
    }
}

impl Add for &RatFunX {
    type Output = RatFunX;
    fn add(self, rhs: &RatFunX) -> RatFunX {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let i = self.x_pow.max(rhs.x_pow);
        let j = self.xm1_pow.max(rhs.xm1_pow);
        RatFunX::new(&self.lift(i, j) + &rhs.lift(i, j), i, j)
    }
}

impl Sub for &RatFunX {
    type Output = RatFunX;
    fn sub(self, rhs: &RatFunX) -> RatFunX {
        self + &(-rhs)
    }
}

impl Mul for &RatFunX {
    type Output = RatFunX;
    fn mul(self, rhs: &RatFunX) -> RatFunX {
        if self.is_zero() || rhs.is_zero() {
            return RatFunX::zero();
        }
        RatFunX::new(&self.num * &rhs.num, self.x_pow + rhs.x_pow, self.xm1_pow + rhs.xm1_pow)
    }
}

impl Neg for &RatFunX {
    type Output = RatFunX;
    fn neg(self) -> RatFunX {
        RatFunX { num: -&self.num, ..*self }
    }
}

impl fmt::Display for RatFunX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        let mut parts = Vec::new();
        match self.x_pow {
            0 => {}
            1 => parts.push("x".to_string()),
            k => parts.push(format!("x^{k}")),
        }
        match self.xm1_pow {
            0 => {}
            1 => parts.push("(x-1)".to_string()),
            k => parts.push(format!("(x-1)^{k}")),
        }
        write!(f, "{})", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_factors() {
        let r = RatFunX::over_sigma_pow(PolyX::sigma(), 1);
        assert_eq!(r, RatFunX::one());
        let r = RatFunX::new(PolyX::x(), 1, 1);
        assert_eq!(r.den_exponents(), (0, 1));
    }

    #[test]
    fn quotient_rule() {
        // d/dx (1/σ) = -σ'/σ²
        let inv = RatFunX::over_sigma_pow(PolyX::one(), 1);
        let expected = RatFunX::over_sigma_pow(-&PolyX::sigma_prime(), 2);
        assert_eq!(inv.derivative(), expected);
    }

    #[test]
    fn add_and_eval() {
        let a = RatFunX::over_sigma_pow(PolyX::one(), 1);
        let b = RatFunX::from_poly(PolyX::x());
        let s = &a + &b;
        let half = Rat::from((1, 2));
        assert_eq!(s.eval(&half).unwrap(), Rat::from(4) + &half);
        let zero = &s - &s;
        assert!(zero.is_zero());
    }
}
