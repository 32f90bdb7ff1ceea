use std::collections::BTreeMap;

use rug::{Float, Integer};

use super::SumFamily;
use crate::error::{Error, Result};
use crate::numerics::{
    bits_for_digits, eval_elem, log10_abs, rational_reconstruct_tol, sum_series, ten_pow_neg, y_of_x, z_jets,
};
use crate::zring::{MonoKey, PolyX, RatFunX, VFactor, ZRingElem};
use crate::Rat;

/// One block of an ansatz:
/// `z^{z_exp} · Π_j (z^{(j)})^{e_j} · Q[σ]_{≤ bound} · σ'^{[sigma_prime]} · v^{[v_factor]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub z_exp: u32,
    /// Exponents of the jets `z^{(j)}` for `j ≥ 1`.
    pub jets: BTreeMap<usize, u32>,
    pub sigma_deg_bound: u32,
    pub sigma_prime: bool,
    pub v_factor: bool,
}

impl Template {
    pub fn new(z_exp: u32, jets: &[(usize, u32)], sigma_deg_bound: u32, sigma_prime: bool, v_factor: bool) -> Self {
        Template { z_exp, jets: jets.iter().copied().collect(), sigma_deg_bound, sigma_prime, v_factor }
    }

    pub fn key(&self) -> MonoKey {
        let len = self.jets.keys().max().map_or(1, |&j| j + 1);
        let mut jets = vec![0u32; len];
        jets[0] = self.z_exp;
        for (&j, &e) in &self.jets {
            jets[j] += e;
        }
        MonoKey::new(if self.v_factor { VFactor::V } else { VFactor::One }, jets)
    }

    fn sigma_prime_poly(&self) -> PolyX {
        if self.sigma_prime {
            PolyX::sigma_prime()
        } else {
            PolyX::one()
        }
    }

    /// Basis element of σ-degree `d`.
    pub fn basis(&self, d: u32) -> ZRingElem {
        let c = &PolyX::sigma().pow(d) * &self.sigma_prime_poly();
        ZRingElem::monomial(self.key(), RatFunX::from_poly(c))
    }

    /// Whether `c` lies in `Q[σ]_{≤ bound} · σ'^{[sigma_prime]}`.
    fn admits(&self, c: &RatFunX) -> bool {
        if !c.is_polynomial() {
            return false;
        }
        let p = c.num();
        let core = if self.sigma_prime {
            // σ-criterion: f(1-x) = -f(x) exactly when f ∈ Q[σ]σ'
            if p.reflect() != -p {
                return false;
            }
            match p.exact_div(&PolyX::sigma_prime()) {
                Some(q) => q,
                None => return false,
            }
        } else {
            p.clone()
        };
        match core.in_sigma() {
            Some(s) => s.degree().is_none_or(|d| d as u32 <= self.sigma_deg_bound),
            None => false,
        }
    }
}

/// Membership shape of a closed form: a finite-dimensional Q-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzShape {
    pub templates: Vec<Template>,
}

impl AnsatzShape {
    pub fn dimension(&self) -> usize {
        self.templates.iter().map(|t| t.sigma_deg_bound as usize + 1).sum()
    }

    pub fn basis(&self) -> Vec<ZRingElem> {
        self.templates
            .iter()
            .flat_map(|t| (0..=t.sigma_deg_bound).map(move |d| t.basis(d)))
            .collect()
    }

    /// Whether every monomial of `e` sits in one of the templates.
    pub fn contains(&self, e: &ZRingElem) -> bool {
        e.terms().all(|(key, c)| {
            self.templates.iter().any(|t| t.key() == *key && t.admits(c))
        })
    }

    pub fn with_extra_degree(&self, extra: u32) -> Self {
        AnsatzShape {
            templates: self
                .templates
                .iter()
                .map(|t| Template { sigma_deg_bound: t.sigma_deg_bound + extra, ..t.clone() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FitOptions {
    /// Starting working precision in decimal digits.
    pub min_digits: u32,
    /// Held-out points must agree to this many digits.
    pub cert_digits: u32,
    pub denom_bound: Integer,
    /// Number of precision doublings before giving up.
    pub max_attempts: u32,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            min_digits: 120,
            cert_digits: 80,
            denom_bound: Integer::from(Integer::u_pow_u(10, 30)),
            max_attempts: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub dimension: usize,
    pub digits: u32,
    pub samples: Vec<Rat>,
    pub heldout: Vec<Rat>,
    /// `log10` of the worst relative error seen at the held-out points.
    pub heldout_log10_error: f64,
}

/// Abscissas `k/293` spread over `(0.1, 0.9)`; 293 is odd, so `1/2` is
/// never hit.
fn sample_points(count: usize) -> Vec<Rat> {
    let lo = 30i64;
    let hi = 263i64;
    let span = hi - lo;
    let mut seen = Vec::new();
    for i in 0..count {
        let k = lo + (span * i as i64) / (count.max(2) as i64 - 1).max(1);
        let mut k = k.min(hi);
        while seen.contains(&k) {
            k += 1;
        }
        seen.push(k);
    }
    seen.into_iter().map(|k| Rat::from((k, 293))).collect()
}

fn heldout_points() -> Vec<Rat> {
    [61i64, 150, 241].iter().map(|&k| Rat::from((k, 307))).collect()
}

fn solve(mut a: Vec<Vec<Float>>, mut b: Vec<Float>) -> Result<Vec<Float>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].clone().abs().partial_cmp(&a[j][col].clone().abs()).expect("finite"))
            .expect("nonempty");
        if a[piv][col].is_zero() {
            return Err(Error::Fit("singular sample system".into()));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = Float::with_val(a[r][col].prec(), &a[r][col] / &a[col][col]);
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let d = Float::with_val(f.prec(), &f * &a[col][c]);
                a[r][c] -= d;
            }
            let d = Float::with_val(f.prec(), &f * &b[col]);
            b[r] -= d;
        }
    }
    let mut x = vec![Float::new(b[0].prec()); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= Float::with_val(acc.prec(), &a[r][c] * &x[c]);
        }
        x[r] = acc / &a[r][r];
    }
    Ok(x)
}

struct Sample {
    basis: Vec<Float>,
    target: Float,
}

fn sample(basis: &[ZRingElem], target: &SumFamily, x: &Rat, prec: u32) -> Result<Sample> {
    let xf = Float::with_val(prec, x);
    let max_jet = basis.iter().map(ZRingElem::max_jet).max().unwrap_or(0).max(1);
    let jets = z_jets(&xf, max_jet, prec)?;
    let y = y_of_x(&xf, prec)?;
    Ok(Sample {
        basis: basis.iter().map(|b| b.eval_with(&xf, &jets)).collect(),
        target: sum_series(target, &y, prec),
    })
}

/// Fits exact rational coefficients of `shape` to the series `target`
/// (viewed as a function of the modulus through `y = y(x)`), then
/// certifies the exact candidate at held-out points.
pub fn fit_ansatz_with(shape: &AnsatzShape, target: &SumFamily, opts: &FitOptions) -> Result<(ZRingElem, FitReport)> {
    let dim = shape.dimension();
    if dim == 0 || dim > 64 {
        return Err(Error::Fit(format!("shape dimension {dim} outside 1..=64")));
    }
    let basis = shape.basis();
    let points = sample_points(2 * dim);
    let mut digits = opts.min_digits;
    let mut last_err = Error::Fit("no attempt made".into());
    for _ in 0..opts.max_attempts {
        let prec = bits_for_digits(digits);
        let samples = points.iter().map(|x| sample(&basis, target, x, prec)).collect::<Result<Vec<_>>>()?;
        // alternate points: even positions solve, odd positions check
        let (solve_set, check_set): (Vec<_>, Vec<_>) = samples.iter().enumerate().partition(|(i, _)| i % 2 == 0);
        let a = solve_set.iter().map(|(_, s)| s.basis.clone()).collect();
        let b = solve_set.iter().map(|(_, s)| s.target.clone()).collect();
        let coeffs = solve(a, b)?;

        let mut worst = f64::NEG_INFINITY;
        for (_, s) in &check_set {
            let mut acc = Float::new(prec);
            for (c, v) in coeffs.iter().zip(&s.basis) {
                acc += Float::with_val(prec, c * v);
            }
            let r = Float::with_val(prec, &acc - &s.target);
            worst = worst.max(log10_abs(&r) - log10_abs(&s.target));
        }
        if worst > -10.0 {
            return Err(Error::Certification(format!(
                "{target}: shape cannot reproduce the series (relative residual 1e{worst:.1} at check points)"
            )));
        }
        let tol = ten_pow_neg(i64::from(digits / 2), prec);
        let exact: Option<Vec<Rat>> = coeffs
            .iter()
            .map(|c| rational_reconstruct_tol(c, &opts.denom_bound, &tol))
            .collect();
        let Some(exact) = exact else {
            last_err = Error::Fit(format!("{target}: rational reconstruction failed at {digits} digits"));
            digits *= 2;
            continue;
        };
        let mut elem = ZRingElem::zero();
        for (c, b) in exact.iter().zip(&basis) {
            elem = &elem + &b.scale(c);
        }
        match certify(&elem, target, opts.cert_digits) {
            Ok((heldout, err)) => {
                let report = FitReport {
                    dimension: dim,
                    digits,
                    samples: points,
                    heldout,
                    heldout_log10_error: err,
                };
                return Ok((elem, report));
            }
            Err(e) => {
                last_err = e;
                digits *= 2;
            }
        }
    }
    Err(last_err)
}

/// Checks `elem` against direct summation at the held-out abscissas.
/// Returns the points and the worst `log10` relative error.
pub fn certify(elem: &ZRingElem, target: &SumFamily, cert_digits: u32) -> Result<(Vec<Rat>, f64)> {
    let prec = bits_for_digits(cert_digits + 40);
    let pts = heldout_points();
    let mut worst = f64::NEG_INFINITY;
    for x in &pts {
        let xf = Float::with_val(prec, x);
        let closed = eval_elem(elem, &xf, prec)?;
        let y = y_of_x(&xf, prec)?;
        let direct = sum_series(target, &y, prec);
        let scale = log10_abs(&direct).max(log10_abs(&closed)).max(-30.0);
        let err = log10_abs(&Float::with_val(prec, &closed - &direct)) - scale;
        worst = worst.max(err);
        if err > -f64::from(cert_digits) {
            return Err(Error::Certification(format!(
                "{target}: held-out point x = {x} disagrees (relative error 1e{err:.1})"
            )));
        }
    }
    Ok((pts, worst))
}

/// [`fit_ansatz_with`] at default options, returning only the element.
pub fn fit_ansatz(shape: &AnsatzShape, target: &SumFamily) -> Result<ZRingElem> {
    fit_ansatz_with(shape, target, &FitOptions::default()).map(|(e, _)| e)
}
