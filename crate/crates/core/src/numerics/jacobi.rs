use rug::Float;

use crate::error::{Error, Result};

/// `(sn, cn, dn)(u | x)` for parameter `x = k²` in `(0, 1)`, by the
/// descending AGM scale and back-substitution of the amplitude.
pub fn jacobi_sn_cn_dn(u: &Float, x: &Float, prec: u32) -> Result<(Float, Float, Float)> {
    if *x <= 0 || *x >= 1 {
        return Err(Error::Numeric("parameter outside (0, 1)".into()));
    }
    let wp = prec + 64;
    let mut a = vec![Float::with_val(wp, 1u32)];
    let mut c = vec![Float::with_val(wp, x).sqrt()];
    let mut b = Float::with_val(wp, 1 - Float::with_val(wp, x)).sqrt();
    loop {
        let last_a = a.last().expect("nonempty").clone();
        let cn = Float::with_val(wp, &last_a - &b) / 2u32;
        let an = Float::with_val(wp, &last_a + &b) / 2u32;
        b = Float::with_val(wp, &last_a * &b).sqrt();
        let done = cn.is_zero() || cn.get_exp().unwrap_or(i32::MIN) < -(wp as i32) + 4;
        a.push(an);
        c.push(cn);
        if done || a.len() > 200 {
            break;
        }
    }
    let n = a.len() - 1;
    let mut phi = Float::with_val(wp, u * &a[n]) << n as u32;
    let mut prev = phi.clone();
    for i in (1..=n).rev() {
        let s = Float::with_val(wp, phi.sin_ref()) * &c[i] / &a[i];
        prev = phi.clone();
        phi = (phi + s.asin()) / 2u32;
    }
    let sn = Float::with_val(prec, phi.sin_ref());
    let cn = Float::with_val(prec, phi.cos_ref());
    let diff = Float::with_val(wp, &prev - &phi);
    let dn = Float::with_val(prec, Float::with_val(wp, phi.cos_ref()) / diff.cos());
    Ok((sn, cn, dn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{bits_for_digits, log10_abs};

    #[test]
    fn pythagorean_identities() {
        let p = bits_for_digits(50);
        let u = Float::with_val(p, 0.7);
        let x = Float::with_val(p, 0.41);
        let (sn, cn, dn) = jacobi_sn_cn_dn(&u, &x, p).unwrap();
        let one = Float::with_val(p, 1u32);
        let s2 = Float::with_val(p, sn.square_ref());
        let r1 = Float::with_val(p, cn.square_ref()) + &s2 - &one;
        let r2 = Float::with_val(p, dn.square_ref()) + Float::with_val(p, &s2 * &x) - &one;
        assert!(log10_abs(&r1) < -48.0);
        assert!(log10_abs(&r2) < -48.0);
    }
}
