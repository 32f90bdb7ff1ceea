use berndt_core::hyperbolic_sums::{family_elem, reduce_power, BaseLibrary, FamilyTag, SumFamily};
use berndt_core::numerics::{bits_for_digits, eval_special, log10_abs, pi, sum_series};
use berndt_core::Error;
use rug::Float;

const TAGS: [FamilyTag; 4] = [FamilyTag::Sbar, FamilyTag::Ctilde, FamilyTag::Cprime, FamilyTag::S];

#[test]
fn power_sums_match_direct_summation_at_pi() {
    let prec = bits_for_digits(60);
    let y = pi(prec);
    let lib = BaseLibrary::global();
    let mut checked = 0;
    for tag in TAGS {
        for m in 1..=6 {
            for p in 1..=13 {
                let Ok(fam) = SumFamily::legal(tag, p, m) else { continue };
                if reduce_power(&fam).is_err() {
                    continue;
                }
                let exact = family_elem(&fam, lib).unwrap().eval_at_half().unwrap();
                let closed = eval_special(&exact, prec);
                let direct = sum_series(&fam, &y, prec);
                let err = log10_abs(&Float::with_val(prec, &closed - &direct));
                assert!(err < -40.0, "{fam}: 1e{err:.1}");
                checked += 1;
            }
        }
    }
    assert!(checked > 40, "only {checked} families checked");
}

#[test]
fn reductions_below_the_base_range_are_reported() {
    let fam = SumFamily::legal(FamilyTag::Sbar, 3, 3).unwrap();
    assert!(matches!(reduce_power(&fam), Err(Error::MissingClosedForm(_))));
    assert!(SumFamily::legal(FamilyTag::S, 3, 2).is_err());
}
