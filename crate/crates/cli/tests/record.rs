use berndt_core::{IntegralSpec, QXYPoly, Rat, Sign};
use berndt_forge::record::{OutputRecord, Verification, OUTPUT_SCHEMA};
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = IntegralSpec> {
    (1u32..8, 0u32..10, any::<bool>()).prop_map(|(m, k, plus)| {
        if plus {
            IntegralSpec::new(4 * (m / 2 + k) + 1, m, Sign::Plus).unwrap()
        } else {
            IntegralSpec::new(2 * m + 1 + 4 * k, m, Sign::Minus).unwrap()
        }
    })
}

fn poly_strategy() -> impl Strategy<Value = QXYPoly> {
    prop::collection::vec((0u32..12, -3i32..20, -10_000i64..10_000, 1i64..5_000), 0..8).prop_map(|terms| {
        QXYPoly::from_terms(terms.into_iter().map(|(x, y, n, d)| (x, y, Rat::from((n, d)))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(spec in spec_strategy(), poly in poly_strategy(), verify in any::<bool>()) {
        let mut rec = OutputRecord::new(&spec, &poly, "1.5".to_string());
        if verify {
            rec.verification = Some(Verification {
                quad_value: "1.5".into(),
                abs_diff: "1e-70".into(),
                digits: 70,
            });
        }
        let text = rec.to_json();
        let back = OutputRecord::from_json(&text).unwrap();
        prop_assert_eq!(&back, &rec);
        prop_assert_eq!(back.poly().unwrap(), poly);
        prop_assert_eq!(back.spec().unwrap(), spec);
        prop_assert_eq!(text.contains("verification"), verify);
    }

    #[test]
    fn terms_sorted_and_in_lowest_terms(spec in spec_strategy(), poly in poly_strategy()) {
        let rec = OutputRecord::new(&spec, &poly, "0".to_string());
        let keys: Vec<_> = rec.poly.iter().map(|t| (t.x_deg, t.y_deg)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(keys, sorted);
        for t in &rec.poly {
            let (n, d) = t.coeff.split_once('/').unwrap();
            let c = Rat::from((n.parse::<i64>().unwrap(), d.parse::<i64>().unwrap()));
            prop_assert_eq!(format!("{}/{}", c.numer(), c.denom()), t.coeff.clone());
        }
    }
}

#[test]
fn coefficients_are_strings() {
    let spec = IntegralSpec::new(5, 1, Sign::Plus).unwrap();
    let poly = QXYPoly::from_terms([(3, 3, Rat::from((3, 2048)))]);
    let v: serde_json::Value = serde_json::from_str(&OutputRecord::new(&spec, &poly, "1".into()).to_json()).unwrap();
    assert_eq!(v["schema"], OUTPUT_SCHEMA);
    assert_eq!(v["poly"][0]["coeff"], "3/2048");
    assert!(v["numeric"].is_string());
}

#[test]
fn rejects_foreign_schema_and_unreduced_rationals() {
    let spec = IntegralSpec::new(5, 1, Sign::Plus).unwrap();
    let poly = QXYPoly::from_terms([(3, 3, Rat::from((3, 2048)))]);
    let mut rec = OutputRecord::new(&spec, &poly, "1".into());
    let foreign = rec.to_json().replace(OUTPUT_SCHEMA, "other/9");
    assert!(OutputRecord::from_json(&foreign).is_err());
    rec.poly[0].coeff = "6/4096".into();
    assert!(rec.poly().is_err());
}
