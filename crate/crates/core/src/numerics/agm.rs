use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(a: &Float, b: &Float, prec: u32) -> Result<Float> {
    agm_with_steps(a, b, prec).map(|(m, _)| m)
}

/// [`agm`] together with the number of iterations it took.
pub fn agm_with_steps(a: &Float, b: &Float, prec: u32) -> Result<(Float, u32)> {
    if *a <= 0 || *b <= 0 {
        return Err(Error::Numeric("agm needs positive arguments".into()));
    }
    let wp = prec + 32;
    let mut a = Float::with_val(wp, a);
    let mut b = Float::with_val(wp, b);
    let mut steps = 0;
    for _ in 0..(wp as usize + 64) {
        let diff = Float::with_val(wp, &a - &b).abs();
        if diff.is_zero() || diff.get_exp().unwrap_or(i32::MIN) < a.get_exp().unwrap_or(0) - wp as i32 + 2 {
            break;
        }
        let next_a = Float::with_val(wp, &a + &b) / 2u32;
        b = Float::with_val(wp, &a * &b).sqrt();
        a = next_a;
        steps += 1;
    }
    Ok((Float::with_val(prec, a), steps))
}

fn check_unit_interval(x: &Float) -> Result<()> {
    if *x <= 0 || *x >= 1 {
        return Err(Error::Numeric(format!("modulus x = {} outside (0, 1)", x.to_f64())));
    }
    Ok(())
}

/// Complete elliptic integrals `(K, E)` for parameter `x = k²`.
pub fn elliptic_ke(x: &Float, prec: u32) -> Result<(Float, Float)> {
    check_unit_interval(x)?;
    let wp = prec + 32;
    let mut a = Float::with_val(wp, 1u32);
    let mut b = Float::with_val(wp, 1 - Float::with_val(wp, x)).sqrt();
    // E/K = 1 - Σ_{n≥0} 2^{n-1} c_n²
    let mut sum = Float::with_val(wp, x) / 2u32;
    let mut pow2 = Float::with_val(wp, 0.5);
    for _ in 0..(wp as usize + 64) {
        let c = Float::with_val(wp, &a - &b) / 2u32;
        if c.is_zero() || c.get_exp().unwrap_or(i32::MIN) < -(wp as i32) / 2 - 12 {
            // c_{n+1} ~ c_n² / (4a): once c_n² is below the working epsilon
            // every later term is too
            let next_a = Float::with_val(wp, &a + &b) / 2u32;
            a = next_a;
            break;
        }
        pow2 *= 2u32;
        sum += Float::with_val(wp, c.square_ref()) * &pow2;
        let next_a = Float::with_val(wp, &a + &b) / 2u32;
        b = Float::with_val(wp, &a * &b).sqrt();
        a = next_a;
    }
    let pi = Float::with_val(wp, Constant::Pi);
    let k = pi / (a * 2u32);
    let e = Float::with_val(wp, &k * Float::with_val(wp, 1 - &sum));
    Ok((Float::with_val(prec, k), Float::with_val(prec, e)))
}

/// `Γ(1/4)` from `Γ(1/4)² = 2 √(2π) π / agm(1, √2)`.
pub fn gamma_quarter(prec: u32) -> Float {
    let wp = prec + 32;
    let pi = Float::with_val(wp, Constant::Pi);
    let sqrt2 = Float::with_val(wp, 2u32).sqrt();
    let m = agm(&Float::with_val(wp, 1u32), &sqrt2, wp).expect("positive");
    let two_pi_sqrt = Float::with_val(wp, &pi * 2u32).sqrt();
    let g2 = two_pi_sqrt * 2u32 * pi / m;
    Float::with_val(prec, g2.sqrt())
}

/// `y = π K(1-x) / K(x)`, so that `q = e^{-y}` is the nome.
pub fn y_of_x(x: &Float, prec: u32) -> Result<Float> {
    check_unit_interval(x)?;
    let wp = prec + 32;
    let one = Float::with_val(wp, 1u32);
    let sx = Float::with_val(wp, x).sqrt();
    let sxp = Float::with_val(wp, 1 - Float::with_val(wp, x)).sqrt();
    let num = agm(&one, &sxp, wp)?;
    let den = agm(&one, &sx, wp)?;
    let pi = Float::with_val(wp, Constant::Pi);
    Ok(Float::with_val(prec, pi * num / den))
}

/// Jets `z, z', ..., z^{(n)}` of `z = 2K/π` at `x`.
///
/// `z` and `z'` come from the AGM (the latter through
/// `dK/dx = (E - (1-x)K)/(2x(1-x))`); higher jets follow from the
/// hypergeometric equation differentiated `n` times,
/// `σ z^{(n+2)} = (n + 1/2)² z^{(n)} - (n+1) σ' z^{(n+1)}`.
pub fn z_jets(x: &Float, n: usize, prec: u32) -> Result<Vec<Float>> {
    check_unit_interval(x)?;
    let wp = prec + 16 + 4 * n as u32;
    let xw = Float::with_val(wp, x);
    let (k, e) = elliptic_ke(&xw, wp)?;
    let pi = Float::with_val(wp, Constant::Pi);
    let one_minus_x = Float::with_val(wp, 1 - &xw);
    let sigma = Float::with_val(wp, &xw * &one_minus_x);
    let sigma_p = Float::with_val(wp, 1 - Float::with_val(wp, &xw * 2u32));
    let dk = (e - Float::with_val(wp, &one_minus_x * &k)) / Float::with_val(wp, &sigma * 2u32);
    let mut jets = vec![Float::with_val(wp, &k * 2u32) / &pi, dk * 2u32 / &pi];
    for j in 0..n.saturating_sub(1) {
        let c = Float::with_val(wp, j as f64 + 0.5);
        let c2 = Float::with_val(wp, c.square_ref());
        let t = Float::with_val(wp, &c2 * &jets[j])
            - Float::with_val(wp, &sigma_p * &jets[j + 1]) * (j as u32 + 1);
        jets.push(t / &sigma);
    }
    jets.truncate(n + 1);
    Ok(jets.into_iter().map(|v| Float::with_val(prec, v)).collect())
}

/// Single jet `z^{(n)}(x)`.
pub fn z_jet_numeric(x: &Float, n: usize, prec: u32) -> Result<Float> {
    Ok(z_jets(x, n, prec)?.pop().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{bits_for_digits, log10_abs};

    fn close(a: &Float, b: &Float, digits: i32) -> bool {
        let d = Float::with_val(a.prec(), a - b);
        log10_abs(&d) < -(digits as f64)
    }

    #[test]
    fn agm_basics() {
        let p = bits_for_digits(60);
        let one = Float::with_val(p, 1u32);
        assert_eq!(agm(&one, &one, p).unwrap(), 1);
        let s2 = Float::with_val(p, 2u32).sqrt();
        let m = agm(&one, &s2, p).unwrap();
        assert!((m.to_f64() - 1.198_140_234_735_592_2).abs() < 1e-15, "{m}");
        assert!(agm(&one, &Float::with_val(p, -1), p).is_err());
    }

    #[test]
    fn gamma_quarter_against_mpfr() {
        let p = bits_for_digits(80);
        let g = gamma_quarter(p);
        let reference = Float::with_val(p, Float::with_val(p, 0.25).gamma_ref());
        assert!(close(&g, &reference, 75));
        // reflection: Γ(1/4) Γ(3/4) = √2 π
        let g34 = Float::with_val(p, Float::with_val(p, 0.75).gamma_ref());
        let rhs = Float::with_val(p, 2u32).sqrt() * Float::with_val(p, Constant::Pi);
        assert!(close(&(g * g34), &rhs, 75));
    }

    #[test]
    fn y_at_half_and_symmetry() {
        let p = bits_for_digits(60);
        let half = Float::with_val(p, 0.5);
        let pi = Float::with_val(p, Constant::Pi);
        assert!(close(&y_of_x(&half, p).unwrap(), &pi, 58));
        let x = Float::with_val(p, 0.3);
        let xc = Float::with_val(p, 1 - &x);
        let prod = y_of_x(&x, p).unwrap() * y_of_x(&xc, p).unwrap();
        assert!(close(&prod, &Float::with_val(p, pi.square_ref()), 57), "{prod}");
    }

    #[test]
    fn legendre_relation() {
        let p = bits_for_digits(60);
        for xv in [0.2, 0.5, 0.8] {
            let x = Float::with_val(p, xv);
            let xc = Float::with_val(p, 1 - &x);
            let (k, e) = elliptic_ke(&x, p).unwrap();
            let (kp, ep) = elliptic_ke(&xc, p).unwrap();
            let lhs = Float::with_val(p, &e * &kp) + Float::with_val(p, &ep * &k) - Float::with_val(p, &k * &kp);
            let half_pi = Float::with_val(p, Constant::Pi) / 2u32;
            assert!(close(&lhs, &half_pi, 57), "x = {xv}");
        }
    }

    #[test]
    fn z_jets_at_half() {
        let p = bits_for_digits(60);
        let g = gamma_quarter(p);
        let pi = Float::with_val(p, Constant::Pi);
        let z0 = Float::with_val(p, g.square_ref()) / ((Float::with_val(p, pi.sqrt_ref()) * &pi) * 2u32);
        let jets = z_jets(&Float::with_val(p, 0.5), 3, p).unwrap();
        assert!(close(&jets[0], &z0, 57));
        assert!(close(&jets[2], &z0, 55));
        let z3 = Float::with_val(p, pi.sqrt_ref()) * 36u32 / Float::with_val(p, g.square_ref());
        assert!(close(&jets[3], &z3, 55));
    }

    #[test]
    fn z_prime_finite_difference() {
        let p = bits_for_digits(80);
        let x = Float::with_val(p, 0.3);
        let h = Float::with_val(p, 1e-20);
        let zp = z_jet_numeric(&x, 1, p).unwrap();
        let up = z_jet_numeric(&Float::with_val(p, &x + &h), 0, p).unwrap();
        let dn = z_jet_numeric(&Float::with_val(p, &x - &h), 0, p).unwrap();
        let fd = (up - dn) / (h * 2u32);
        assert!(close(&zp, &fd, 35));
    }
}
