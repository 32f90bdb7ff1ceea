use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::{bits_for_digits, ten_pow_neg};
use crate::contour::{IntegralSpec, Sign};
use crate::error::{Error, Result};

/// `x^a / (cos x + sign·cosh x)^m` on the half-line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Integrand {
    pub a: u32,
    pub m: u32,
    pub sign: Sign,
}

impl Integrand {
    /// Any convergent integrand; unlike [`IntegralSpec`] this does not
    /// require the exact closed-form regime.
    pub fn new(a: u32, m: u32, sign: Sign) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("order m must be positive".into()));
        }
        if sign == Sign::Minus && a < 2 * m {
            return Err(Error::InvalidSpec(format!(
                "x^{a}/(cos x - cosh x)^{m} is not integrable at 0 (needs a >= 2m)"
            )));
        }
        Ok(Integrand { a, m, sign })
    }
}

impl From<&IntegralSpec> for Integrand {
    fn from(s: &IntegralSpec) -> Self {
        Integrand { a: s.a(), m: s.m(), sign: s.sign() }
    }
}

#[derive(Debug, Clone)]
pub struct QuadratureReport {
    pub value: Float,
    /// Certified bound on the neglected tail beyond the last panel.
    pub tail_bound: Float,
    pub panels: usize,
    /// Working precision in bits.
    pub precision: u32,
    /// Largest Gauss-Legendre order any panel needed.
    pub max_order: usize,
    /// Right end of the integration range.
    pub cutoff: f64,
}

type Rule = Arc<(Vec<Float>, Vec<Float>)>;

static RULES: Mutex<Option<HashMap<(usize, u32), Rule>>> = Mutex::new(None);

fn legendre_pair(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1u32);
    let mut p1 = x.clone();
    for k in 2..=n {
        let kf = k as u32;
        let t = Float::with_val(prec, x * &p1) * (2 * kf - 1) - Float::with_val(prec, &p0 * (kf - 1));
        p0 = std::mem::replace(&mut p1, t / kf);
    }
    (p1, p0)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` at `prec` bits, cached.
pub fn gauss_legendre(n: usize, prec: u32) -> Rule {
    {
        let guard = RULES.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(r) = guard.as_ref().and_then(|m| m.get(&(n, prec))) {
            return r.clone();
        }
    }
    let wp = prec + 16;
    let mut nodes = vec![Float::new(prec); n];
    let mut weights = vec![Float::new(prec); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut x = Float::with_val(wp, guess);
        let mut dp = Float::new(wp);
        for _ in 0..200 {
            let (pn, pm) = legendre_pair(n, &x);
            let x2m1 = Float::with_val(wp, x.square_ref()) - 1u32;
            dp = (Float::with_val(wp, &x * &pn) - &pm) * n as u32 / x2m1;
            let dx = Float::with_val(wp, &pn / &dp);
            x -= &dx;
            if dx.is_zero() || dx.get_exp().unwrap_or(i32::MIN) < -(wp as i32) + 8 {
                let (pn, pm) = legendre_pair(n, &x);
                let x2m1 = Float::with_val(wp, x.square_ref()) - 1u32;
                dp = (Float::with_val(wp, &x * &pn) - &pm) * n as u32 / x2m1;
                break;
            }
        }
        let one_m_x2 = 1u32 - Float::with_val(wp, x.square_ref());
        let w = Float::with_val(wp, 2u32) / (one_m_x2 * Float::with_val(wp, dp.square_ref()));
        nodes[i] = Float::with_val(prec, &x);
        nodes[n - 1 - i] = Float::with_val(prec, -x);
        weights[i] = Float::with_val(prec, &w);
        weights[n - 1 - i] = Float::with_val(prec, w);
    }
    let rule = Arc::new((nodes, weights));
    let mut guard = RULES.lock().unwrap_or_else(|e| e.into_inner());
    guard.get_or_insert_with(HashMap::new).insert((n, prec), rule.clone());
    rule
}

fn eval_integrand(f: &Integrand, x: &Float) -> Float {
    let prec = x.prec();
    let a = f.a;
    let m = f.m;
    match f.sign {
        Sign::Plus => {
            let d = Float::with_val(prec, x.cos_ref()) + Float::with_val(prec, x.cosh_ref());
            Float::with_val(prec, x.pow(a)) / Float::with_val(prec, d.pow(m))
        }
        Sign::Minus if *x < 0.125 => {
            // cos x - cosh x = -2 x² Σ_k x^{4k} / (4k+2)!
            let x4 = Float::with_val(prec, x.pow(4u32));
            let mut term = Float::with_val(prec, 0.5);
            let mut sum = term.clone();
            let mut k = 0u32;
            loop {
                term *= &x4;
                term /= (4 * k + 3) * (4 * k + 4);
                term /= (4 * k + 5) * (4 * k + 6);
                k += 1;
                if term.is_zero() || term.get_exp().unwrap_or(i32::MIN) < -(prec as i32) - 4 {
                    break;
                }
                sum += &term;
            }
            let d = sum * -2i32;
            Float::with_val(prec, x.pow(a - 2 * m)) / Float::with_val(prec, d.pow(m))
        }
        Sign::Minus => {
            let d = Float::with_val(prec, x.cos_ref()) - Float::with_val(prec, x.cosh_ref());
            Float::with_val(prec, x.pow(a)) / Float::with_val(prec, d.pow(m))
        }
    }
}

/// Decimal logarithm of `|integrand|` in double precision, used to size
/// the working precision.
fn log10_integrand(f: &Integrand, x: f64) -> f64 {
    let ln_cosh = if x > 30.0 { x - std::f64::consts::LN_2 } else { x.cosh().ln() };
    let (ln_num, ln_den) = match f.sign {
        // |cos x - cosh x| ≈ x² near 0
        Sign::Minus if x < 0.125 => ((f64::from(f.a) - 2.0 * f64::from(f.m)) * x.ln(), 0.0),
        Sign::Minus => (f64::from(f.a) * x.ln(), ln_cosh + (1.0 - x.cos() / x.cosh()).abs().ln()),
        Sign::Plus => (f64::from(f.a) * x.ln(), ln_cosh + (1.0 + x.cos() / x.cosh()).ln()),
    };
    (ln_num - f64::from(f.m) * ln_den) / std::f64::consts::LN_10
}

/// `log10` of the tail bound `4^m T^a e^{-mT} / (m - a/T)`.
fn log10_tail(f: &Integrand, t: f64) -> f64 {
    let a = f64::from(f.a);
    let m = f64::from(f.m);
    if m - a / t <= 0.0 || t < 2.0 {
        return f64::INFINITY;
    }
    (m * 4f64.ln() + a * t.ln() - m * t - (m - a / t).ln()) / std::f64::consts::LN_10
}

fn panel_sum(f: &Integrand, lo: &Float, hi: &Float, n: usize, prec: u32) -> Float {
    let rule = gauss_legendre(n, prec);
    let half = Float::with_val(prec, hi - lo) / 2u32;
    let mid = Float::with_val(prec, hi + lo) / 2u32;
    let mut acc = Float::new(prec);
    for (x, w) in rule.0.iter().zip(rule.1.iter()) {
        let t = Float::with_val(prec, x * &half) + &mid;
        acc += Float::with_val(prec, w * eval_integrand(f, &t));
    }
    acc * half
}

/// Integral over `(0, ∞)` with absolute error below `10^{-digits}`.
///
/// `[0, T]` is split into panels of width `π/4`; each panel runs
/// Gauss-Legendre at doubling orders until two consecutive orders agree,
/// and `T` is chosen so the tail bound is below the target.
pub fn quad_integrand(f: &Integrand, digits: u32) -> Result<QuadratureReport> {
    let target = f64::from(digits) + 3.0;
    let mut t_end = (2.0 * f64::from(f.a) / f64::from(f.m) + 2.0).max(4.0);
    let width = std::f64::consts::FRAC_PI_4;
    let mut panels = (t_end / width).ceil() as usize;
    while log10_tail(f, panels as f64 * width) > -target {
        panels += 1;
        if panels > 1_000_000 {
            return Err(Error::Numeric("tail bound unattainable".into()));
        }
    }
    t_end = panels as f64 * width;

    let mut peak = f64::NEG_INFINITY;
    let steps = 4000;
    for i in 1..=steps {
        let x = t_end * i as f64 / steps as f64;
        peak = peak.max(log10_integrand(f, x));
    }
    let extra = peak.max(0.0).ceil() as u32;
    let prec = bits_for_digits(digits + extra + 20);

    let pi = Float::with_val(prec, Constant::Pi);
    let w = pi / 4u32;
    let panel_tol = Float::with_val(prec, ten_pow_neg(target as i64, prec)) / panels as u32;
    let mut total = Float::new(prec);
    let mut start_order = 16usize;
    let mut max_order = 0usize;
    for k in 0..panels {
        let lo = Float::with_val(prec, &w * k as u32);
        let hi = Float::with_val(prec, &w * (k as u32 + 1));
        let mut n = start_order;
        let mut prev = panel_sum(f, &lo, &hi, n, prec);
        loop {
            let next = panel_sum(f, &lo, &hi, 2 * n, prec);
            let diff = Float::with_val(prec, &next - &prev).abs();
            n *= 2;
            prev = next;
            if diff < panel_tol {
                break;
            }
            if n > 4096 {
                return Err(Error::Numeric(format!("panel {k} did not converge")));
            }
        }
        max_order = max_order.max(n);
        start_order = (n / 4).max(16);
        total += prev;
    }
    let tail = Float::with_val(prec, 10f64).pow(Float::with_val(prec, log10_tail(f, t_end)));
    Ok(QuadratureReport {
        value: total,
        tail_bound: tail,
        panels,
        precision: prec,
        max_order,
        cutoff: t_end,
    })
}

/// Quadrature oracle for a Berndt-type integral.
pub fn quad_berndt(spec: &IntegralSpec, digits: u32) -> Result<QuadratureReport> {
    quad_integrand(&Integrand::from(spec), digits)
}
