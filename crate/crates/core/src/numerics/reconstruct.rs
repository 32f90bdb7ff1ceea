use rug::{Integer, Float};

use crate::Rat;

fn abs_diff(v: &Float, r: &Rat) -> Float {
    let prec = v.prec();
    Float::with_val(prec, v - Float::with_val(prec, r)).abs()
}

/// Rational with denominator at most `denom_bound` within `tol` of `v`,
/// taken as the first continued-fraction convergent that is close enough.
pub fn rational_reconstruct_tol(v: &Float, denom_bound: &Integer, tol: &Float) -> Option<Rat> {
    if !v.is_finite() {
        return None;
    }
    let prec = v.prec();
    let mut x = Float::with_val(prec, v);
    let (mut p0, mut q0) = (Integer::from(1), Integer::new());
    let mut a = x.to_integer_round(rug::float::Round::Down)?.0;
    let (mut p1, mut q1) = (a.clone(), Integer::from(1));
    for _ in 0..(prec as usize + 16) {
        if q1 > *denom_bound {
            return None;
        }
        let r = Rat::from((p1.clone(), q1.clone()));
        if abs_diff(v, &r) < *tol {
            return Some(r);
        }
        let frac = Float::with_val(prec, &x - &a);
        if frac.is_zero() {
            return None;
        }
        x = frac.recip();
        a = x.to_integer_round(rug::float::Round::Down)?.0;
        let p2 = Integer::from(&a * &p1) + &p0;
        let q2 = Integer::from(&a * &q1) + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    None
}

/// Reconstruction with the default tolerance `10^{-digits/2}`, where
/// `digits` is the decimal precision of `v`.
pub fn rational_reconstruct(v: &Float, denom_bound: &Integer) -> Option<Rat> {
    let prec = v.prec();
    let digits = (f64::from(prec) * std::f64::consts::LOG10_2).floor() as i64;
    let tol = super::ten_pow_neg(digits / 2, prec);
    rational_reconstruct_tol(v, denom_bound, &tol)
}

/// Integer relation `Σ r_i x_i ≈ 0` by PSLQ.
///
/// A relation is reported once `|Σ r_i x_i| / |x|` drops below `tol`.
/// Returns `None` when the norm bound proves that no relation with
/// Euclidean norm up to `max_norm` exists at this precision, or when the
/// iteration budget runs out.
pub fn pslq(x: &[Float], tol: &Float, max_norm: f64) -> Option<Vec<Integer>> {
    let n = x.len();
    assert!(n >= 2, "need at least two values");
    let prec = x.iter().map(Float::prec).max().expect("nonempty");
    let f = |v: f64| Float::with_val(prec, v);
    let gamma = f(1.2);

    let mut s = vec![f(0.0); n];
    let mut acc = f(0.0);
    for k in (0..n).rev() {
        acc += Float::with_val(prec, x[k].square_ref());
        s[k] = Float::with_val(prec, acc.sqrt_ref());
    }
    let t = s[0].clone();
    if t.is_zero() {
        return None;
    }
    let mut y: Vec<Float> = x.iter().map(|v| Float::with_val(prec, v / &t)).collect();
    for v in &mut s {
        *v /= &t;
    }

    let mut h = vec![vec![f(0.0); n - 1]; n];
    for i in 0..n {
        for j in 0..(n - 1).min(i + 1) {
            h[i][j] = if i == j {
                Float::with_val(prec, &s[j + 1] / &s[j])
            } else {
                -Float::with_val(prec, &y[i] * &y[j]) / Float::with_val(prec, &s[j] * &s[j + 1])
            };
        }
    }
    let mut a: Vec<Vec<Integer>> =
        (0..n).map(|i| (0..n).map(|j| Integer::from(u8::from(i == j))).collect()).collect();
    let mut b = a.clone();

    let reduce = |i: usize,
                  j: usize,
                  h: &mut Vec<Vec<Float>>,
                  y: &mut Vec<Float>,
                  a: &mut Vec<Vec<Integer>>,
                  b: &mut Vec<Vec<Integer>>| {
        if h[j][j].is_zero() {
            return;
        }
        let q = Float::with_val(prec, &h[i][j] / &h[j][j]).round();
        if q.is_zero() {
            return;
        }
        let qi = q.to_integer().expect("finite");
        let yi = y[i].clone();
        y[j] += Float::with_val(prec, &q * &yi);
        for k in 0..=j {
            let d = Float::with_val(prec, &q * &h[j][k]);
            h[i][k] -= d;
        }
        for k in 0..n {
            let d = Integer::from(&qi * &a[j][k]);
            a[i][k] -= d;
            let e = Integer::from(&qi * &b[k][i]);
            b[k][j] += e;
        }
    };

    for i in 1..n {
        for j in (0..i).rev() {
            reduce(i, j, &mut h, &mut y, &mut a, &mut b);
        }
    }

    for _ in 0..(50 * prec as usize) {
        // pick the row maximizing γ^{r+1} |H_rr|
        let mut best = 0;
        let mut best_val = f(-1.0);
        let mut g = gamma.clone();
        for r in 0..n - 1 {
            let v = Float::with_val(prec, h[r][r].abs_ref()) * &g;
            if v > best_val {
                best_val = v;
                best = r;
            }
            g *= &gamma;
        }
        let r = best;
        y.swap(r, r + 1);
        a.swap(r, r + 1);
        h.swap(r, r + 1);
        for row in b.iter_mut() {
            row.swap(r, r + 1);
        }
        if r + 2 < n {
            let t0 = Float::with_val(prec, h[r][r].square_ref()) + Float::with_val(prec, h[r][r + 1].square_ref());
            let t0 = t0.sqrt();
            let t1 = Float::with_val(prec, &h[r][r] / &t0);
            let t2 = Float::with_val(prec, &h[r][r + 1] / &t0);
            for row in h.iter_mut().skip(r) {
                let t3 = row[r].clone();
                let t4 = row[r + 1].clone();
                row[r] = Float::with_val(prec, &t1 * &t3) + Float::with_val(prec, &t2 * &t4);
                row[r + 1] = Float::with_val(prec, &t1 * &t4) - Float::with_val(prec, &t2 * &t3);
            }
        }
        for i in r + 1..n {
            for j in (0..=(i - 1).min(r + 1)).rev() {
                reduce(i, j, &mut h, &mut y, &mut a, &mut b);
            }
        }

        let (jmin, ymin) = y
            .iter()
            .enumerate()
            .map(|(j, v)| (j, Float::with_val(prec, v.abs_ref())))
            .min_by(|p, q| p.1.partial_cmp(&q.1).expect("finite"))
            .expect("nonempty");
        if ymin < *tol {
            let rel: Vec<Integer> = (0..n).map(|k| b[k][jmin].clone()).collect();
            return Some(rel);
        }
        let hmax = (0..n - 1)
            .map(|j| h[j][j].to_f64().abs())
            .fold(0.0f64, f64::max);
        if hmax > 0.0 && 1.0 / hmax > max_norm {
            return None;
        }
        if b.iter().flatten().any(|e| e.significant_bits() > prec / 2) {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bits_for_digits;
    use rug::float::Constant;

    #[test]
    fn reconstructs_simple_fractions() {
        let p = bits_for_digits(80);
        let third = Float::with_val(p, 1) / 3u32;
        let bound = Integer::from(Integer::u_pow_u(10, 30));
        assert_eq!(rational_reconstruct(&third, &bound).unwrap(), Rat::from((1, 3)));
        let v = Float::with_val(p, -4455) / Float::with_val(p, 32768u32);
        assert_eq!(rational_reconstruct(&v, &bound).unwrap(), Rat::from((-4455, 32768)));
        assert_eq!(rational_reconstruct(&Float::with_val(p, 0), &bound).unwrap(), 0);
    }

    #[test]
    fn rejects_irrationals_with_small_bound() {
        let p = bits_for_digits(80);
        let pi = Float::with_val(p, Constant::Pi);
        assert!(rational_reconstruct(&pi, &Integer::from(10)).is_none());
        assert!(rational_reconstruct(&pi, &Integer::from(Integer::u_pow_u(10, 15))).is_none());
    }

    #[test]
    fn pslq_finds_known_relation() {
        let p = bits_for_digits(60);
        let pi = Float::with_val(p, Constant::Pi);
        let pi2 = Float::with_val(p, pi.square_ref());
        // 3 + 7π - 5π² / 2
        let v = Float::with_val(p, 3) + Float::with_val(p, &pi * 7u32) - Float::with_val(p, &pi2 * 5u32) / 2u32;
        let x = vec![v, Float::with_val(p, 1), pi, pi2];
        let tol = crate::numerics::ten_pow_neg(50, p);
        let rel = pslq(&x, &tol, 1e12).expect("relation");
        // normalize sign on the first entry
        let sgn = if rel[0] < 0 { -1 } else { 1 };
        let rel: Vec<i64> = rel.iter().map(|r| r.to_i64().unwrap() * sgn).collect();
        assert_eq!(rel, vec![2, -6, -14, 5]);
    }
}
