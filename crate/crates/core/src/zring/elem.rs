use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::Float;

use super::{PolyX, RatFunX, SpecialValue};
use crate::error::{Error, Result};
use crate::Rat;

/// The `v`-part of a monomial. Products are folded back to one of these
/// three using `v² = σ`, `v·v' = (1 - 2x)/2` and `v'² = (1 - 2x)²/(4σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VFactor {
    One,
    V,
    VPrime,
}

/// Key of a normal-form monomial: the `v`-part together with the exponents
/// of the jets `z, z', z'', ...` (entry `j` is the exponent of `z^{(j)}`,
/// trailing zeros trimmed).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoKey {
    pub v: VFactor,
    pub jets: Vec<u32>,
}

impl MonoKey {
    pub fn new(v: VFactor, mut jets: Vec<u32>) -> Self {
        while jets.last() == Some(&0) {
            jets.pop();
        }
        MonoKey { v, jets }
    }

    pub fn unit() -> Self {
        MonoKey { v: VFactor::One, jets: Vec::new() }
    }

    pub fn ev(&self) -> u32 {
        u32::from(self.v == VFactor::V)
    }

    pub fn evp(&self) -> u32 {
        u32::from(self.v == VFactor::VPrime)
    }

    pub fn jet(&self, j: usize) -> u32 {
        self.jets.get(j).copied().unwrap_or(0)
    }

    /// Total degree in the jets.
    pub fn z_degree(&self) -> u32 {
        self.jets.iter().sum()
    }

    fn times_jets(&self, other: &[u32]) -> Vec<u32> {
        let n = self.jets.len().max(other.len());
        (0..n).map(|j| self.jet(j) + other.get(j).copied().unwrap_or(0)).collect()
    }
}

/// A single monomial of an element in normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct ZMonomial {
    pub coeff: RatFunX,
    pub ev: u32,
    pub evp: u32,
    pub jets: Vec<u32>,
}

/// Element of `Q(x)[v, v', z, z', z'', ...]` in normal form: a map from
/// monomial keys to nonzero rational-function coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZRingElem {
    terms: BTreeMap<MonoKey, RatFunX>,
}

fn v_product(a: VFactor, b: VFactor) -> (VFactor, RatFunX) {
    use VFactor::*;
    match (a, b) {
        (One, f) | (f, One) => (f, RatFunX::one()),
        (V, V) => (One, RatFunX::from_poly(PolyX::sigma())),
        (V, VPrime) | (VPrime, V) => (
            One,
            RatFunX::from_poly(PolyX::new(vec![Rat::from((1, 2)), Rat::from(-1)])),
        ),
        (VPrime, VPrime) => {
            let sp = PolyX::sigma_prime();
            (One, RatFunX::over_sigma_pow((&sp * &sp).scale(&Rat::from((1, 4))), 1))
        }
    }
}

impl ZRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::from(1))
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_ratfun(RatFunX::constant(c))
    }

    pub fn from_ratfun(c: RatFunX) -> Self {
        Self::monomial(MonoKey::unit(), c)
    }

    pub fn from_poly(p: PolyX) -> Self {
        Self::from_ratfun(RatFunX::from_poly(p))
    }

    pub fn monomial(key: MonoKey, coeff: RatFunX) -> Self {
        let mut e = Self::zero();
        e.add_term(key, coeff);
        e
    }

    pub fn v() -> Self {
        Self::monomial(MonoKey::new(VFactor::V, vec![]), RatFunX::one())
    }

    pub fn vprime() -> Self {
        Self::monomial(MonoKey::new(VFactor::VPrime, vec![]), RatFunX::one())
    }

    /// The jet `z^{(j)}`.
    pub fn jet(j: usize) -> Self {
        let mut jets = vec![0; j + 1];
        jets[j] = 1;
        Self::monomial(MonoKey::new(VFactor::One, jets), RatFunX::one())
    }

    pub fn z_pow(n: u32) -> Self {
        Self::monomial(MonoKey::new(VFactor::One, vec![n]), RatFunX::one())
    }

    pub fn sigma() -> Self {
        Self::from_poly(PolyX::sigma())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &RatFunX)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &MonoKey) -> Option<&RatFunX> {
        self.terms.get(key)
    }

    pub fn monomials(&self) -> Vec<ZMonomial> {
        self.terms
            .iter()
            .map(|(k, c)| ZMonomial { coeff: c.clone(), ev: k.ev(), evp: k.evp(), jets: k.jets.clone() })
            .collect()
    }

    /// Highest jet order present.
    pub fn max_jet(&self) -> usize {
        self.terms.keys().map(|k| k.jets.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, key: MonoKey, coeff: RatFunX) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                let sum = &*slot + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if *c == 0 {
            return Self::zero();
        }
        ZRingElem { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.scale(c))).collect() }
    }

    pub fn mul_ratfun(&self, c: &RatFunX) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The x-derivation: `v -> v'`, `v' -> -v/(4σ²)`, `z^{(j)} -> z^{(j+1)}`.
    pub fn ddx(&self) -> Self {
        let mut out = Self::zero();
        let vpp = RatFunX::over_sigma_pow(PolyX::constant(Rat::from((-1, 4))), 2);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c.derivative());
            for (j, &e) in key.jets.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut jets = key.jets.clone();
                jets[j] -= 1;
                if jets.len() == j + 1 {
                    jets.push(0);
                }
                jets[j + 1] += 1;
                out.add_term(MonoKey::new(key.v, jets), c.scale(&Rat::from(e)));
            }
            match key.v {
                VFactor::One => {}
                VFactor::V => out.add_term(MonoKey::new(VFactor::VPrime, key.jets.clone()), c.clone()),
                VFactor::VPrime => out.add_term(MonoKey::new(VFactor::V, key.jets.clone()), c * &vpp),
            }
        }
        out
    }

    /// The y-derivation `d/dy = -σ z² d/dx`.
    pub fn ddy(&self) -> Self {
        let factor = Self::monomial(
            MonoKey::new(VFactor::One, vec![2]),
            RatFunX::from_poly(-&PolyX::sigma()),
        );
        &factor * &self.ddx()
    }

    /// Substitutes `x = 1/2`, `v = 1/2`, `v' = 0` and the exact jet values.
    pub fn eval_at_half(&self) -> Result<SpecialValue> {
        let half = Rat::from((1, 2));
        let mut out = SpecialValue::zero();
        let mut jets: Vec<SpecialValue> = Vec::new();
        for (key, c) in &self.terms {
            if key.v == VFactor::VPrime {
                continue;
            }
            let mut r = c
                .eval(&half)
                .ok_or_else(|| Error::MalformedElement(format!("coefficient {c} has a pole at 1/2")))?;
            if key.v == VFactor::V {
                r *= &half;
            }
            let mut term = SpecialValue::constant(r);
            for (j, &e) in key.jets.iter().enumerate() {
                while jets.len() <= j {
                    jets.push(super::zjet_at_half(jets.len() as u32));
                }
                for _ in 0..e {
                    term = &term * &jets[j];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Numeric value given `x`, `v = sqrt(σ)`, `v' = (1 - 2x)/(2v)` and the
    /// jets `z^{(0..)}` at `x`.
    pub fn eval_with(&self, x: &Float, jets: &[Float]) -> Float {
        let prec = x.prec();
        let sigma = Float::with_val(prec, x * Float::with_val(prec, 1 - x));
        let v = sigma.sqrt();
        let vp = Float::with_val(prec, 1 - Float::with_val(prec, x * 2u32)) / Float::with_val(prec, &v * 2u32);
        let mut acc = Float::new(prec);
        for (key, c) in &self.terms {
            let mut t = c.eval_float(x);
            match key.v {
                VFactor::One => {}
                VFactor::V => t *= &v,
                VFactor::VPrime => t *= &vp,
            }
            for (j, &e) in key.jets.iter().enumerate() {
                if e > 0 {
                    t *= Float::with_val(prec, (&jets[j]).pow(e));
                }
            }
            acc += t;
        }
        acc
    }
}

impl Add for &ZRingElem {
    type Output = ZRingElem;
    fn add(self, rhs: &ZRingElem) -> ZRingElem {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ZRingElem {
    type Output = ZRingElem;
    fn sub(self, rhs: &ZRingElem) -> ZRingElem {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Neg for &ZRingElem {
    type Output = ZRingElem;
    fn neg(self) -> ZRingElem {
        ZRingElem { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
}

impl Mul for &ZRingElem {
    type Output = ZRingElem;
    fn mul(self, rhs: &ZRingElem) -> ZRingElem {
        let mut out = ZRingElem::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let (v, extra) = v_product(ka.v, kb.v);
                let key = MonoKey::new(v, ka.times_jets(&kb.jets));
                out.add_term(key, &(ca * cb) * &extra);
            }
        }
        out
    }
}

impl fmt::Display for ZRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}]")?;
            match key.v {
                VFactor::One => {}
                VFactor::V => write!(f, "*v")?,
                VFactor::VPrime => write!(f, "*v'")?,
            }
            for (j, &e) in key.jets.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = match j {
                    0 => "z".to_string(),
                    1 => "z'".to_string(),
                    2 => "z''".to_string(),
                    _ => format!("z^({j})"),
                };
                if e == 1 {
                    write!(f, "*{name}")?;
                } else {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
