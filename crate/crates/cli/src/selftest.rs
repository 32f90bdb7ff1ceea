//! Internal consistency checks runnable from the command line.

use std::io::Write;

use berndt_core::arith::{gamma_lm, triangle, TriangleKind};
use berndt_core::contour::{berndt_eval_with, check_structure};
use berndt_core::elliptic_series::{p_poly, q_poly, sn_cn_dn, XPowerSeries};
use berndt_core::hyperbolic_sums::{
    base_power, certify, cprime_base, ctilde_base, BaseLibrary, FamilyTag, SumFamily, FITTED_FAMILIES,
};
use berndt_core::numerics::{agm_with_steps, bits_for_digits, eval_qxy, log10_abs, quad_berndt, BigFloat};
use berndt_core::zring::PolyX;
use berndt_core::{IntegralSpec, Rat, Sign};

use crate::{CliError, CmdResult, Exit};

type Check = Result<(), String>;

fn triangles_invert() -> Check {
    for kind in [TriangleKind::B, TriangleKind::Btilde, TriangleKind::D, TriangleKind::Dtilde] {
        let t = triangle(kind, 13);
        for i in 0..t.size() {
            for j in 0..=i {
                let mut acc = Rat::new();
                for l in j..=i {
                    acc += t.entry(i, l) * t.inverse_entry(l, j);
                }
                if acc != u32::from(i == j) {
                    return Err(format!("{kind:?}: product entry ({i}, {j}) is {acc}"));
                }
            }
        }
    }
    Ok(())
}

fn gamma_anchors() -> Check {
    for m in 1..=20u32 {
        if gamma_lm(0, m) != 1 || gamma_lm(1, m) != Rat::from((-i64::from(m), 12)) {
            return Err(format!("gamma anchors wrong at m = {m}"));
        }
    }
    Ok(())
}

fn jacobi_identities() -> Check {
    let order = 31;
    let (sn, cn, dn) = sn_cn_dn(order);
    let one = XPowerSeries::one(order);
    let sn2 = sn.mul(&sn);
    if sn2.add(&cn.mul(&cn)) != one {
        return Err("sn² + cn² ≠ 1".into());
    }
    if dn.mul(&dn).add(&sn2.scale_poly(&PolyX::x())) != one {
        return Err("dn² + x sn² ≠ 1".into());
    }
    Ok(())
}

fn pq_symmetry() -> Check {
    for n in 0..30usize {
        let (poly, even) = if n % 2 == 1 {
            (p_poly(n).map_err(|e| e.to_string())?, n % 4 == 1)
        } else {
            (q_poly(n).map_err(|e| e.to_string())?, n % 4 == 0)
        };
        let r = poly.reflect();
        if (even && r != poly) || (!even && r != -&poly) {
            return Err(format!("reflection symmetry fails at index {n}"));
        }
    }
    Ok(())
}

fn agm_steps() -> Check {
    for bits in [64u32, 1000, 4000] {
        let (_, steps) = agm_with_steps(&BigFloat::with_val(bits, 1), &BigFloat::with_val(bits, 2), bits)
            .map_err(|e| e.to_string())?;
        if f64::from(steps) > f64::from(bits).log2() + 4.0 {
            return Err(format!("{steps} steps at {bits} bits"));
        }
    }
    Ok(())
}

fn explicit_bases(digits: u32) -> Check {
    for s in 0..=3u32 {
        let fam = SumFamily::legal(FamilyTag::Ctilde, 2 * s + 1, 1).map_err(|e| e.to_string())?;
        certify(&ctilde_base(s), &fam, digits).map_err(|e| e.to_string())?;
        if s >= 1 {
            let fam = SumFamily::legal(FamilyTag::Cprime, 2 * s, 2).map_err(|e| e.to_string())?;
            let e = cprime_base(s).map_err(|e| e.to_string())?;
            certify(&e, &fam, digits).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

fn fixture_certifies(lib: &BaseLibrary, tag: FamilyTag, index: u32, digits: u32) -> Check {
    let elem = lib
        .fixtures()
        .get(tag, index)
        .ok_or_else(|| "missing".to_string())?
        .map_err(|e| e.to_string())?;
    let fam = SumFamily::legal(tag, index, base_power(tag)).map_err(|e| e.to_string())?;
    certify(&elem, &fam, digits).map(|_| ()).map_err(|e| e.to_string())
}

fn structure_grid(lib: &BaseLibrary, m_max: u32, p_max: u32) -> Check {
    for m in 1..=m_max {
        let plus = (m / 2..=p_max).map(|p| (4 * p + 1, Sign::Plus));
        let minus = (0..=p_max).map(|k| (2 * m + 1 + 4 * k, Sign::Minus));
        for (a, sign) in plus.chain(minus) {
            let spec = IntegralSpec::new(a, m, sign).map_err(|e| e.to_string())?;
            let poly = berndt_eval_with(&spec, lib).map_err(|e| format!("{spec}: {e}"))?;
            if poly.is_empty() || !check_structure(&poly, &spec) {
                return Err(format!("{spec} = {poly} leaves its window"));
            }
        }
    }
    Ok(())
}

fn exact_matches_quadrature(lib: &BaseLibrary, spec: &IntegralSpec, digits: u32) -> Check {
    let poly = berndt_eval_with(spec, lib).map_err(|e| e.to_string())?;
    let q = quad_berndt(spec, digits).map_err(|e| e.to_string())?;
    let bits = bits_for_digits(digits);
    let diff = BigFloat::with_val(bits, &q.value - eval_qxy(&poly, bits));
    let agree = -log10_abs(&diff);
    if agree < f64::from(digits * 2 / 3) {
        return Err(format!("only {agree:.1} digits of agreement"));
    }
    Ok(())
}

/// Runs the checks in order, printing one line each and stopping at the
/// first failure. Fixture checks cover bases up to exponent 21 unless
/// `deep` is set, in which case they cover all of them at higher precision.
pub fn run_selftest(lib: &BaseLibrary, deep: bool, out: &mut dyn Write) -> CmdResult {
    let cert_digits = if deep { 80 } else { 30 };
    let mut checks: Vec<(String, Box<dyn FnOnce() -> Check + '_>)> = vec![
        ("coefficient triangles invert".into(), Box::new(triangles_invert)),
        ("gamma anchor values".into(), Box::new(gamma_anchors)),
        ("jacobi series identities".into(), Box::new(jacobi_identities)),
        ("p/q reflection symmetry".into(), Box::new(pq_symmetry)),
        ("agm converges quadratically".into(), Box::new(agm_steps)),
        ("explicit bases match direct sums".into(), Box::new(move || explicit_bases(cert_digits))),
    ];
    for tag in FITTED_FAMILIES {
        for index in lib.fixtures().indices(tag) {
            if deep || index <= 21 {
                checks.push((
                    format!("fixture {tag} {index} certifies"),
                    Box::new(move || fixture_certifies(lib, tag, index, cert_digits)),
                ));
            }
        }
    }
    let (m_max, p_max) = if deep { (6, 8) } else { (4, 5) };
    checks.push((
        format!("structure windows for m <= {m_max}, p <= {p_max}"),
        Box::new(move || structure_grid(lib, m_max, p_max)),
    ));
    let mut specs = vec![(5, 1, Sign::Plus), (3, 1, Sign::Minus), (9, 2, Sign::Minus), (9, 2, Sign::Plus)];
    if deep {
        specs.extend([(13, 3, Sign::Plus), (11, 3, Sign::Minus), (17, 4, Sign::Plus), (13, 4, Sign::Minus)]);
    }
    for (a, m, sign) in specs {
        let spec = IntegralSpec::new(a, m, sign).map_err(CliError::from)?;
        checks.push((
            format!("exact {spec} matches quadrature"),
            Box::new(move || exact_matches_quadrature(lib, &spec, 50)),
        ));
    }

    let io = |e: std::io::Error| CliError::new(Exit::Failure, e.to_string());
    let total = checks.len();
    for (name, check) in checks {
        if let Err(msg) = check() {
            writeln!(out, "FAIL  {name}: {msg}").map_err(io)?;
            return Ok(Exit::VerificationFailed);
        }
        writeln!(out, "ok    {name}").map_err(io)?;
    }
    writeln!(out, "all {total} checks passed").map_err(io)?;
    Ok(Exit::Ok)
}
