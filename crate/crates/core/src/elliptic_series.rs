//! Truncated Maclaurin series of the Jacobi functions with coefficients in
//! Q[x], and the polynomial families read off from `sd(u)` and `u·ds(u)`.

use std::sync::Mutex;

use crate::arith::rat_factorial;
use crate::error::{Error, Result};
use crate::zring::PolyX;
use crate::Rat;

/// Power series in `u` truncated after `order` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct XPowerSeries {
    coeffs: Vec<PolyX>,
}

impl XPowerSeries {
    pub fn new(coeffs: Vec<PolyX>) -> Self {
        XPowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, t: usize) -> &PolyX {
        &self.coeffs[t]
    }

    pub fn coeffs(&self) -> &[PolyX] {
        &self.coeffs
    }

    pub fn one(order: usize) -> Self {
        let mut c = vec![PolyX::zero(); order];
        if order > 0 {
            c[0] = PolyX::one();
        }
        XPowerSeries { coeffs: c }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        XPowerSeries { coeffs: (0..n).map(|t| &self.coeffs[t] + &other.coeffs[t]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        XPowerSeries { coeffs: (0..n).map(|t| &self.coeffs[t] - &other.coeffs[t]).collect() }
    }

    pub fn scale_poly(&self, p: &PolyX) -> Self {
        XPowerSeries { coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .map(|t| {
                let mut acc = PolyX::zero();
                for i in 0..=t {
                    if self.coeffs[i].is_zero() || other.coeffs[t - i].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&self.coeffs[i] * &other.coeffs[t - i]);
                }
                acc
            })
            .collect();
        XPowerSeries { coeffs }
    }

    /// Quotient by a series whose constant term is a nonzero rational.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        let lead = match other.coeffs.first().map(|p| (p.degree(), p.coeff(0))) {
            Some((Some(0), c)) => c,
            _ => {
                return Err(Error::OutOfRange(
                    "series division needs a nonzero rational constant term".into(),
                ))
            }
        };
        let inv = Rat::from(lead.recip_ref());
        let mut q: Vec<PolyX> = Vec::with_capacity(n);
        for t in 0..n {
            let mut acc = self.coeffs[t].clone();
            for i in 0..t {
                if q[i].is_zero() || other.coeffs[t - i].is_zero() {
                    continue;
                }
                acc = &acc - &(&q[i] * &other.coeffs[t - i]);
            }
            q.push(acc.scale(&inv));
        }
        Ok(XPowerSeries { coeffs: q })
    }

    /// Divides by `u`; the constant term must vanish. The order drops by one.
    pub fn div_u(&self) -> Result<Self> {
        match self.coeffs.first() {
            Some(c) if c.is_zero() => Ok(XPowerSeries { coeffs: self.coeffs[1..].to_vec() }),
            _ => Err(Error::OutOfRange("series is not divisible by u".into())),
        }
    }
}

/// `sn`, `cn`, `dn` to `order` coefficients, generated from
/// `sn' = cn dn`, `cn' = -sn dn`, `dn' = -x sn cn`.
pub fn sn_cn_dn(order: usize) -> (XPowerSeries, XPowerSeries, XPowerSeries) {
    assert!(order >= 2, "order must be at least 2");
    let mut sn = vec![PolyX::zero(); order];
    let mut cn = vec![PolyX::zero(); order];
    let mut dn = vec![PolyX::zero(); order];
    cn[0] = PolyX::one();
    dn[0] = PolyX::one();
    let conv = |a: &[PolyX], b: &[PolyX], t: usize| {
        let mut acc = PolyX::zero();
        for i in 0..=t {
            if a[i].is_zero() || b[t - i].is_zero() {
                continue;
            }
            acc = &acc + &(&a[i] * &b[t - i]);
        }
        acc
    };
    for t in 0..order - 1 {
        let inv = Rat::from((1, t as i64 + 1));
        let s = conv(&cn, &dn, t).scale(&inv);
        let c = conv(&sn, &dn, t).scale(&-inv.clone());
        let d = (&conv(&sn, &cn, t) * &PolyX::x()).scale(&-inv);
        sn[t + 1] = s;
        cn[t + 1] = c;
        dn[t + 1] = d;
    }
    (XPowerSeries::new(sn), XPowerSeries::new(cn), XPowerSeries::new(dn))
}

struct Tables {
    order: usize,
    sd: XPowerSeries,
    uds: XPowerSeries,
}

static TABLES: Mutex<Option<std::sync::Arc<Tables>>> = Mutex::new(None);

fn tables(needed: usize) -> std::sync::Arc<Tables> {
    let mut guard = TABLES.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = guard.as_ref() {
        if t.order > needed {
            return t.clone();
        }
    }
    let order = (2 * needed + 4).max(34);
    let (sn, _, dn) = sn_cn_dn(order);
    let sd = sn.div(&dn).expect("dn(0) = 1");
    let sn_over_u = sn.div_u().expect("sn(0) = 0");
    let uds = dn.div(&sn_over_u).expect("sn/u is a unit");
    let t = std::sync::Arc::new(Tables { order: uds.order().min(sd.order()), sd, uds });
    *guard = Some(t.clone());
    t
}

/// `p_n = n!·[u^n] sd(u)` for odd `n`.
pub fn p_poly(n: usize) -> Result<PolyX> {
    if n % 2 == 0 {
        return Err(Error::OutOfRange(format!("p_n needs odd n, got {n}")));
    }
    let t = tables(n);
    Ok(t.sd.coeff(n).scale(&rat_factorial(n as u32)))
}

/// `q_n = n!·[u^n] u·ds(u)` for even `n`.
pub fn q_poly(n: usize) -> Result<PolyX> {
    if n % 2 == 1 {
        return Err(Error::OutOfRange(format!("q_n needs even n, got {n}")));
    }
    let t = tables(n);
    Ok(t.uds.coeff(n).scale(&rat_factorial(n as u32)))
}

/// Full polynomial tables `p_n` and `q_n` for `n < order`, odd/even
/// entries included, so parity vanishing can be inspected.
pub fn sd_and_uds(order: usize) -> (XPowerSeries, XPowerSeries) {
    let t = tables(order);
    (
        XPowerSeries::new(t.sd.coeffs()[..order].to_vec()),
        XPowerSeries::new(t.uds.coeffs()[..order].to_vec()),
    )
}

/// Even-index Maclaurin coefficients of `sn²(u)`: entry `i` is `[u^{2i}]`.
pub fn sn_sq_coeffs(order: usize) -> Vec<PolyX> {
    assert!(order >= 4, "order must be at least 4");
    let (sn, _, _) = sn_cn_dn(order);
    let sq = sn.mul(&sn);
    sq.coeffs().iter().step_by(2).cloned().collect()
}
