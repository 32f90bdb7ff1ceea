use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use berndt_core::arith::parse_rat;
use berndt_core::conjecture::{screen_support, screen_x9m6, support, ConjectureId, ScreenMethod, Verdict};
use berndt_core::contour::berndt_eval_with;
use berndt_core::hyperbolic_sums::{family_elem, fit_base, BaseLibrary, FamilyTag, FitOptions, FixtureSet, SumFamily};
use berndt_core::numerics::{
    bits_for_digits, eval_elem, eval_qxy, log10_abs, quad_berndt, sum_series, y_of_x, BigFloat,
};
use berndt_core::reference::published_values;
use berndt_core::zring::ZRingElem;
use berndt_core::{Error, IntegralSpec, QXYPoly, Sign};

use crate::record::{OutputRecord, Verification};
use crate::{CliError, CmdResult, Exit};

fn io(e: std::io::Error) -> CliError {
    CliError::new(Exit::Failure, format!("write failed: {e}"))
}

/// Scientific notation with `digits` significant digits.
pub fn fmt_float(v: &BigFloat, digits: u32) -> String {
    format!("{:.*}", digits.max(1) as usize, v)
}

/// Default numeric tolerance exponent for a working precision: two thirds
/// of the digits, leaving the rest as guard digits.
pub fn default_tol(prec: u32) -> u32 {
    prec * 2 / 3
}

/// Digits of agreement, relative to `max(1, |value|)`.
fn agreement(diff: &BigFloat, value: &BigFloat, prec: u32) -> u32 {
    let l = log10_abs(value).max(0.0) - log10_abs(diff);
    if l.is_finite() {
        l.floor().max(0.0) as u32
    } else {
        prec
    }
}

/// Library from a fixtures directory, or the embedded one.
pub fn library(fixtures: Option<&Path>) -> Result<&'static BaseLibrary, CliError> {
    match fixtures {
        None => Ok(BaseLibrary::global()),
        Some(dir) => {
            let set = FixtureSet::from_dir(dir)?;
            Ok(Box::leak(Box::new(BaseLibrary::new(set))))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Debug, Clone)]
pub struct EvalArgs {
    pub sign: Sign,
    pub a: u32,
    pub m: u32,
    pub format: Format,
    pub verify: bool,
    pub prec: u32,
    pub tol: Option<u32>,
}

pub fn cmd_eval(args: &EvalArgs, lib: &BaseLibrary, out: &mut dyn Write) -> CmdResult {
    let spec = IntegralSpec::new(args.a, args.m, args.sign)?;
    let poly = berndt_eval_with(&spec, lib)?;
    let bits = bits_for_digits(args.prec);
    let value = eval_qxy(&poly, bits);
    let mut rec = OutputRecord::new(&spec, &poly, fmt_float(&value, args.prec));
    let mut exit = Exit::Ok;
    if args.verify {
        let q = quad_berndt(&spec, args.prec)?;
        let diff = BigFloat::with_val(bits, &q.value - &value).abs();
        let tol = args.tol.unwrap_or_else(|| default_tol(args.prec));
        if agreement(&diff, &value, args.prec) < tol {
            exit = Exit::VerificationFailed;
        }
        rec.verification = Some(Verification {
            quad_value: fmt_float(&q.value, args.prec),
            abs_diff: fmt_float(&diff, 6),
            digits: agreement(&diff, &value, args.prec),
        });
    }
    match args.format {
        Format::Plain => {
            writeln!(out, "{spec} = {poly}").map_err(io)?;
            writeln!(out, "  = {}", rec.numeric).map_err(io)?;
            if let Some(v) = &rec.verification {
                let verdict = if exit == Exit::Ok { "verified" } else { "MISMATCH" };
                writeln!(out, "  quadrature {}", v.quad_value).map_err(io)?;
                writeln!(out, "  |difference| {} ({} digits, {verdict})", v.abs_diff, v.digits).map_err(io)?;
            }
        }
        Format::Latex => writeln!(out, "{}", rec.latex).map_err(io)?,
        Format::Json => writeln!(out, "{}", rec.to_json()).map_err(io)?,
    }
    Ok(exit)
}

fn monomial_name(x: u32, y: i32) -> String {
    format!("X^{x}*Y^{y}")
}

/// Monomials where the two polynomials differ, with both coefficients.
pub fn poly_diff(published: &QXYPoly, computed: &QXYPoly) -> Vec<String> {
    let keys: BTreeSet<(u32, i32)> = published.terms().chain(computed.terms()).map(|(&k, _)| k).collect();
    keys.into_iter()
        .filter(|&(x, y)| published.coeff(x, y) != computed.coeff(x, y))
        .map(|(x, y)| {
            format!(
                "{}: published {}, computed {}",
                monomial_name(x, y),
                published.coeff(x, y),
                computed.coeff(x, y)
            )
        })
        .collect()
}

pub fn cmd_table(prec: u32, lib: &BaseLibrary, out: &mut dyn Write) -> CmdResult {
    let bits = bits_for_digits(prec);
    let values = published_values();
    let mut passed = 0;
    for pv in &values {
        let label = pv.spec.to_string();
        let computed = match berndt_eval_with(&pv.spec, lib) {
            Ok(c) => c,
            Err(e) => {
                writeln!(out, "{label:<28} error: {e}  FAIL").map_err(io)?;
                continue;
            }
        };
        let diffs = poly_diff(&pv.value, &computed);
        let q = quad_berndt(&pv.spec, prec)?;
        let num_diff = BigFloat::with_val(bits, &q.value - eval_qxy(&computed, bits)).abs();
        let digits = agreement(&num_diff, &q.value, prec);
        let numeric_ok = digits >= default_tol(prec);
        let ok = diffs.is_empty() && numeric_ok;
        passed += usize::from(ok);
        writeln!(
            out,
            "{label:<28} exact {:<8} numeric {:>3} digits  {}",
            if diffs.is_empty() { "match" } else { "MISMATCH" },
            digits,
            if ok { "PASS" } else { "FAIL" }
        )
        .map_err(io)?;
        if let Some(g) = &pv.gamma34 {
            writeln!(out, "    quoted as {} = {}", g.to_latex(), pv.value).map_err(io)?;
        }
        for d in diffs {
            writeln!(out, "    {d}").map_err(io)?;
        }
    }
    writeln!(out, "{passed}/{} examples pass", values.len()).map_err(io)?;
    Ok(if passed == values.len() { Exit::Ok } else { Exit::VerificationFailed })
}

#[derive(Debug, Clone)]
pub struct SumsArgs {
    pub family: String,
    pub p: u32,
    pub m: u32,
    pub x: Option<String>,
    pub prec: u32,
}

pub fn cmd_sums(args: &SumsArgs, lib: &BaseLibrary, out: &mut dyn Write) -> CmdResult {
    let tag = FamilyTag::parse(&args.family)
        .ok_or_else(|| CliError::new(Exit::InvalidSpec, format!("unknown family {:?}", args.family)))?;
    let fam = SumFamily::legal(tag, args.p, args.m)?;
    let elem = family_elem(&fam, lib)?;
    writeln!(out, "{fam}: {} monomials", elem.len()).map_err(io)?;
    for (key, c) in elem.terms() {
        writeln!(out, "  {}", ZRingElem::monomial(key.clone(), c.clone())).map_err(io)?;
    }
    let Some(xs) = &args.x else { return Ok(Exit::Ok) };
    let x = parse_rat(xs)
        .filter(|x| *x > 0 && *x < 1)
        .ok_or_else(|| CliError::new(Exit::InvalidSpec, format!("--x must be a rational in (0, 1), got {xs:?}")))?;
    let bits = bits_for_digits(args.prec);
    let xf = BigFloat::with_val(bits, &x);
    let closed = eval_elem(&elem, &xf, bits)?;
    let y = y_of_x(&xf, bits)?;
    let direct = sum_series(&fam, &y, bits);
    let diff = BigFloat::with_val(bits, &closed - &direct).abs();
    let ok = agreement(&diff, &direct, args.prec) >= default_tol(args.prec);
    writeln!(out, "at x = {x} (y = {})", fmt_float(&y, 20)).map_err(io)?;
    writeln!(out, "  closed form {}", fmt_float(&closed, args.prec)).map_err(io)?;
    writeln!(out, "  direct sum  {}", fmt_float(&direct, args.prec)).map_err(io)?;
    writeln!(out, "  |difference| {} ({})", fmt_float(&diff, 6), if ok { "agree" } else { "MISMATCH" })
        .map_err(io)?;
    Ok(if ok { Exit::Ok } else { Exit::VerificationFailed })
}

pub fn cmd_conjecture(id: &str, n_max: u32, prec: u32, out: &mut dyn Write) -> CmdResult {
    let id = ConjectureId::parse(id)
        .ok_or_else(|| CliError::new(Exit::InvalidSpec, format!("unknown conjecture {id:?}")))?;
    if !(1..=6).contains(&n_max) {
        return Err(CliError::new(Exit::InvalidSpec, format!("--n-max must be in 1..=6, got {n_max}")));
    }
    let Some(a) = id.exponent() else {
        let r = screen_x9m6(prec)?;
        writeln!(out, "x^9/(cos x + cosh x)^6").map_err(io)?;
        writeln!(out, "  quadrature  {}", fmt_float(&r.quadrature, prec)).map_err(io)?;
        writeln!(out, "  conjectured {}", fmt_float(&r.conjectured, prec)).map_err(io)?;
        let verdict = if r.agreement_digits >= f64::from(default_tol(prec)) { "consistent" } else { "inconsistent" };
        writeln!(out, "  agreement {:.1} digits: {verdict}", r.agreement_digits).map_err(io)?;
        return Ok(Exit::Ok);
    };
    for n in 1..=n_max {
        for m in [2 * n - 1, 2 * n] {
            let size = support(id, m).map_or(0, |s| s.len()) as u32;
            let digits = prec.max(25 * (size + 1));
            let r = screen_support(id, m, digits)?;
            let method = match r.method {
                ScreenMethod::Exact => "exact".to_string(),
                ScreenMethod::Pslq => format!("pslq at {digits} digits"),
            };
            let verdict = match r.verdict {
                Verdict::InSupport => "inside conjectured support",
                Verdict::OutsideSupport => "OUTSIDE conjectured support",
                Verdict::Inconclusive => "inconclusive",
            };
            writeln!(out, "x^{a}/(cos x + cosh x)^{m}: {size} allowed monomials, {method}: {verdict}").map_err(io)?;
            for (g, c) in &r.terms {
                writeln!(out, "    {c} * {g}").map_err(io)?;
            }
        }
    }
    Ok(Exit::Ok)
}

pub fn cmd_fit_bases(dir: &Path, max_index: u32, out: &mut dyn Write) -> CmdResult {
    let mut set = FixtureSet::empty();
    let opts = FitOptions::default();
    let jobs = (3..=max_index)
        .step_by(2)
        .map(|i| (FamilyTag::Sbar, i))
        .chain((2..max_index).step_by(2).map(|i| (FamilyTag::S, i)));
    for (tag, index) in jobs {
        let (elem, report) = fit_base(tag, index, &opts)?;
        writeln!(
            out,
            "{tag} {index}: dimension {}, {} digits, held-out error {}",
            report.dimension,
            report.digits,
            if report.heldout_log10_error.is_finite() {
                format!("1e{:.0}", report.heldout_log10_error)
            } else {
                "0".to_string()
            }
        )
        .map_err(io)?;
        set.insert(tag, index, &elem, &report);
    }
    set.write_dir(dir)?;
    writeln!(out, "wrote {}", dir.display()).map_err(io)?;
    Ok(Exit::Ok)
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::InvalidSpec(_) | Error::MissingClosedForm(_) => Exit::InvalidSpec,
            _ => Exit::Failure,
        };
        CliError::new(exit, e.to_string())
    }
}
