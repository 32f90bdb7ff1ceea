use std::path::Path;
use std::process::{Command, Output};

use berndt_core::hyperbolic_sums::FixtureSet;
use berndt_forge::record::OutputRecord;
use berndt_core::{berndt_eval, IntegralSpec, Sign};

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berndt-forge"))
        .args(args)
        .env_remove("BERNDT_FORGE_PREC")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn latex_for_x9_minus_order_two() {
    let o = forge(&["eval", "--sign", "minus", "--a", "9", "--m", "2", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r"\frac{27\Gamma^{16}(1/4)}{5\cdot 2^{12}\pi^{4}}-\frac{\Gamma^{24}(1/4)}{2^{18}\pi^{8}}"
    );
}

#[test]
fn verify_succeeds_for_x5_plus() {
    let o = forge(&["eval", "--sign", "plus", "--a", "5", "--m", "1", "--verify", "--prec", "60", "--tol", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verified"));
}

#[test]
fn unreachable_tolerance_is_a_verification_failure() {
    let o = forge(&["eval", "--sign", "plus", "--a", "5", "--m", "1", "--verify", "--prec", "30", "--tol", "200"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn invalid_spec_exits_with_two_and_names_the_congruence() {
    let o = forge(&["eval", "--sign", "minus", "--a", "8", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("a - 2m ≡ 1 (mod 4)"), "{}", stderr(&o));
    let o = forge(&["eval", "--sign", "plus", "--a", "7", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("a ≡ 1 (mod 4)"));
}

#[test]
fn json_output_parses_back_to_the_exact_value() {
    let o = forge(&["eval", "--sign", "plus", "--a", "13", "--m", "3", "--format", "json", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let rec = OutputRecord::from_json(&stdout(&o)).unwrap();
    let spec = IntegralSpec::new(13, 3, Sign::Plus).unwrap();
    assert_eq!(rec.spec().unwrap(), spec);
    assert_eq!(rec.poly().unwrap(), berndt_eval(&spec).unwrap());
    let v = rec.verification.unwrap();
    assert!(v.digits >= 40);
    assert!(stdout(&o).contains("\"quadValue\""));
}

#[test]
fn precision_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_berndt-forge"))
        .args(["eval", "--sign", "plus", "--a", "5", "--m", "1"])
        .env("BERNDT_FORGE_PREC", "20")
        .output()
        .unwrap();
    let line = stdout(&o).lines().nth(1).unwrap().trim().to_string();
    // "= " followed by twenty significant digits and a decimal point
    assert_eq!(line.len(), 2 + 21, "{line}");
}

#[test]
fn sums_prints_closed_form_and_numerics() {
    let o = forge(&["sums", "--family", "ctilde", "--p", "1", "--m", "1", "--x", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[1/4]*v*z^2"), "{out}");
    assert!(out.contains("1.741504912107096"));
    assert!(out.contains("(agree)"));

    let o = forge(&["sums", "--family", "sbar", "--p", "7", "--m", "3", "--x", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(agree)"));
}

#[test]
fn illegal_sums_exit_with_two() {
    assert_eq!(forge(&["sums", "--family", "s2", "--p", "3", "--m", "2"]).status.code(), Some(2));
    assert_eq!(forge(&["sums", "--family", "zeta", "--p", "3", "--m", "1"]).status.code(), Some(2));
    assert_eq!(forge(&["sums", "--family", "sbar", "--p", "1", "--m", "1"]).status.code(), Some(2));
    let o = forge(&["sums", "--family", "ctilde", "--p", "1", "--m", "1", "--x", "3/2"]);
    assert_eq!(o.status.code(), Some(2));
}

fn table_rows(out: &str) -> Vec<(String, bool)> {
    out.lines()
        .filter(|l| l.starts_with("x^"))
        .map(|l| (l.split("  ").next().unwrap().trim().to_string(), l.ends_with("PASS")))
        .collect()
}

#[test]
fn table_reports_the_sign_mismatch_on_x7() {
    let o = forge(&["table", "--paper-examples"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(3), "{out}");
    let rows = table_rows(&out);
    assert_eq!(rows.len(), 10);
    for (label, pass) in &rows {
        assert_eq!(*pass, !label.starts_with("x^7/"), "{label}");
    }
    assert!(out.contains("X^4*Y^4: published 9/8192, computed -9/8192"));
    assert!(out.contains(r"\Gamma^{6}(3/4)"));
    assert!(out.contains("9/10 examples pass"));

    let hi = forge(&["table", "--paper-examples", "--prec", "100"]);
    assert_eq!(hi.status.code(), Some(3));
    assert_eq!(table_rows(&stdout(&hi)), rows);
}

#[test]
fn table_needs_its_flag() {
    assert_eq!(forge(&["table"]).status.code(), Some(2));
}

#[test]
fn conjecture_reports() {
    let o = forge(&["conjecture", "--id", "x9m6", "--prec", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let digits: f64 = out
        .split("agreement ")
        .nth(1)
        .and_then(|s| s.split(' ').next())
        .and_then(|s| s.parse().ok())
        .unwrap();
    assert!(digits >= 40.0, "{out}");

    let o = forge(&["conjecture", "--id", "plus-x1", "--n-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("inside conjectured support").count(), 2);

    let o = forge(&["conjecture", "--id", "plus-x5", "--n-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("conjectured support").count(), 2);

    assert_eq!(forge(&["conjecture", "--id", "plus-x1", "--n-max", "7"]).status.code(), Some(2));
    assert_eq!(forge(&["conjecture", "--id", "plus-x3"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = forge(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

fn tampered_fixtures(dir: &Path) {
    let mut set = FixtureSet::embedded().unwrap();
    let base = set.file_mut(berndt_core::hyperbolic_sums::FamilyTag::Sbar)
        .bases
        .iter_mut()
        .find(|b| b.index == 3)
        .unwrap();
    let num = base.monomials[0].num.iter_mut().find(|c| *c != "0").unwrap();
    *num = if let Some(rest) = num.strip_prefix('-') { rest.to_string() } else { format!("-{num}") };
    set.write_dir(dir).unwrap();
}

#[test]
fn tampered_fixture_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    tampered_fixtures(dir.path());
    let fx = dir.path().to_str().unwrap();

    let o = forge(&["--fixtures", fx, "selftest"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL  fixture sbar 3 certifies"), "{}", stdout(&o));

    let o = forge(&["--fixtures", fx, "table", "--paper-examples"]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    let rows = table_rows(&out);
    assert!(rows.iter().any(|(l, pass)| l == "x^3/(cos x - cosh x)^1" && !pass), "{out}");
    assert!(out.contains("X^2*Y^2: published -1/256"), "{out}");
}

#[test]
fn fit_bases_writes_loadable_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let o = forge(&["fit-bases", "--out", dir.path().to_str().unwrap(), "--max-index", "9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let set = FixtureSet::from_dir(dir.path()).unwrap();
    let embedded = FixtureSet::embedded().unwrap();
    for (tag, idx) in [("sbar", 3), ("sbar", 9), ("s2", 8)] {
        let tag = berndt_core::hyperbolic_sums::FamilyTag::parse(tag).unwrap();
        assert_eq!(
            set.get(tag, idx).unwrap().unwrap(),
            embedded.get(tag, idx).unwrap().unwrap()
        );
    }
}
