//! The LaTeX rendering of the worked examples against their typeset
//! forms, compared term by term after normalizing whitespace, brace style
//! and the bare `\Gamma` shorthand for `\Gamma(1/4)`.

use berndt_core::{berndt_eval, IntegralSpec, Sign};
use regex::Regex;

fn normalize(s: &str) -> Vec<String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bare_pow = Regex::new(r"\\pi\^(\d+)").unwrap();
    let s = bare_pow.replace_all(&s, r"\pi^{$1}");
    let bare_gamma = Regex::new(r"\\Gamma\^\{(\d+)\}(\(1/4\))?").unwrap();
    let s = bare_gamma.replace_all(&s, r"\Gamma^{$1}(1/4)");
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            '+' | '-' if depth == 0 && !cur.is_empty() => terms.push(std::mem::take(&mut cur)),
            _ => {}
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut terms: Vec<String> =
        terms.into_iter().map(|t| if t.starts_with('-') || t.starts_with('+') { t } else { format!("+{t}") }).collect();
    terms.sort();
    terms
}

#[test]
fn latex_matches_typeset_forms() {
    let cases: [(u32, u32, Sign, &str); 6] = [
        (9, 2, Sign::Plus, r"-\frac{189\Gamma^{16}(1/4)}{5\cdot 2^{15}\pi^{4}}+\frac{9\Gamma^{24}(1/4)}{2^{21}\pi^{8}}"),
        (9, 2, Sign::Minus, r"\frac{27\Gamma^{16}(1/4)}{5\cdot 2^{12}\pi^{4}}-\frac{\Gamma^{24}(1/4)}{2^{18}\pi^{8}}"),
        (
            11,
            3,
            Sign::Minus,
            r"-\frac{4455\Gamma^{16}}{2^{15}\pi^4}-\frac{189\Gamma^{24}}{2^{20}\pi^6}+\frac{297\Gamma^{24}}{2^{18}\pi^7}-\frac{935\Gamma^{24}}{2^{20}\pi^8}
-\frac{195\Gamma^{32}}{2^{27}\pi^{12}}",
        ),
        (
            13,
            3,
            Sign::Plus,
            r"\frac{405405\Gamma^{20}}{2^{20}\pi^5}+\frac{68607\Gamma^{28}}
{2^{27}\pi^7}-\frac{107757\Gamma^{28}}{2^{25}\pi^8}+\frac{84591\Gamma^{28}}{2^{25}\pi^9}+\frac{17679\Gamma^{36}}{2^{32}\pi^{13}}",
        ),
        (
            33,
            2,
            Sign::Minus,
            r"\frac{55168390953244107 \Gamma^{64}}{85\cdot 2^{36} \pi ^{16}}-\frac{135515509591329 \Gamma^{72}}{2^{42} \pi ^{20}}",
        ),
        (
            33,
            2,
            Sign::Plus,
            r"-\frac{1807702666364949654069 \Gamma^{64}}{85\cdot 2^{51}  \pi ^{16}}+\frac{4440707733798260001 \Gamma^{72}}{2^{57} \pi ^{20}}",
        ),
    ];
    for (a, m, sign, typeset) in cases {
        let spec = IntegralSpec::new(a, m, sign).unwrap();
        let ours = berndt_eval(&spec).unwrap().to_latex();
        assert_eq!(normalize(&ours), normalize(typeset), "{spec}: {ours}");
    }
}
