use rug::Float;

use crate::hyperbolic_sums::{FamilyTag, SumFamily};

/// Direct summation of a hyperbolic series at `y > 0`.
///
/// Terms are summed until past the peak of `n^p e^{-m n y}` and below
/// `2^{-prec}` times the largest term seen; after the peak consecutive
/// terms shrink at least geometrically, so the remaining tail is bounded by
/// a geometric series dominated by the stopping term.
pub fn sum_series(family: &SumFamily, y: &Float, prec: u32) -> Float {
    assert!(*y > 0, "series needs y > 0");
    let wp = prec + 32;
    let y = Float::with_val(wp, y);
    let m = family.m;
    let p = family.p;
    let yf = y.to_f64();
    let peak = (f64::from(p) / (f64::from(m) * yf)).ceil() as u64 + 1;
    let mut sum = Float::new(wp);
    let mut largest = Float::new(wp);
    let mut n: u64 = 1;
    loop {
        let arg = match family.tag {
            FamilyTag::Sbar | FamilyTag::S => Float::with_val(wp, n),
            FamilyTag::Ctilde | FamilyTag::Cprime => Float::with_val(wp, n as f64 - 0.5),
        };
        let t = Float::with_val(wp, &arg * &y);
        let q = Float::with_val(wp, -&t).exp();
        let q2 = Float::with_val(wp, q.square_ref());
        // 1/sinh(t) = 2q/(1 - q²), 1/cosh(t) = 2q/(1 + q²)
        let recip = match family.tag {
            FamilyTag::Sbar | FamilyTag::S => Float::with_val(wp, &q * 2u32) / Float::with_val(wp, 1 - &q2),
            FamilyTag::Ctilde | FamilyTag::Cprime => Float::with_val(wp, &q * 2u32) / Float::with_val(wp, 1 + &q2),
        };
        let mut term = Float::with_val(wp, recip.pow_u(m)) * Float::with_val(wp, arg.pow_u(p));
        let alternating = matches!(family.tag, FamilyTag::Sbar | FamilyTag::Ctilde);
        if alternating && n % 2 == 0 {
            term = -term;
        }
        let mag = Float::with_val(wp, term.abs_ref());
        if mag > largest {
            largest = mag.clone();
        }
        sum += &term;
        let small = mag.is_zero()
            || (!largest.is_zero()
                && mag.get_exp().unwrap_or(i32::MIN) < largest.get_exp().unwrap_or(0) - wp as i32 + 8);
        if n >= peak && small {
            break;
        }
        n += 1;
    }
    Float::with_val(prec, sum)
}

trait PowU {
    fn pow_u(&self, e: u32) -> Float;
}

impl PowU for Float {
    fn pow_u(&self, e: u32) -> Float {
        use rug::ops::Pow;
        Float::with_val(self.prec(), self.pow(e))
    }
}
