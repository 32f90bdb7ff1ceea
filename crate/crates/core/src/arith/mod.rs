//! Exact integer and rational helpers, Bernoulli numbers, the Laurent
//! coefficients of `(cos z ± cosh z)^{-m}` near their poles, and the
//! derivative triangles of `1/sinh`, `1/sinh²` and their cosh analogues.

mod triangle;

pub use triangle::{triangle, CoeffTriangle, TriangleKind};

use std::sync::Mutex;

use rug::{Complete, Integer};

use crate::error::{Error, Result};
use crate::Rat;

pub fn factorial(n: u32) -> Integer {
    Integer::factorial(n).complete()
}

pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::binomial_u(n, k).complete()
}

pub fn rat_factorial(n: u32) -> Rat {
    Rat::from(factorial(n))
}

/// `2^e` for a signed exponent.
pub fn pow2(e: i64) -> Rat {
    let mag = Integer::from(1) << (e.unsigned_abs() as u32);
    if e >= 0 {
        Rat::from(mag)
    } else {
        Rat::from((Integer::from(1), mag))
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::from((n, d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    Rat::parse(s.trim()).ok().map(|r| r.complete())
}

static BERNOULLI: Mutex<Vec<Rat>> = Mutex::new(Vec::new());

/// The Bernoulli number `B_n` with `B_1 = -1/2`.
///
/// Only `n = 1` and even `n` are accepted; the odd ones beyond 1 vanish and
/// asking for them almost always signals an indexing slip.
pub fn bernoulli(n: usize) -> Result<Rat> {
    if n > 1 && n % 2 == 1 {
        return Err(Error::OutOfRange(format!("odd Bernoulli index {n}")));
    }
    let mut table = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let k = table.len();
        let next = if k == 0 {
            Rat::from(1)
        } else {
            // sum_{j<=k} C(k+1, j) B_j = 0
            let mut acc = Rat::new();
            for (j, b) in table.iter().enumerate() {
                if *b != 0 {
                    acc += Rat::from(binomial(k as u32 + 1, j as u32)) * b;
                }
            }
            -acc / Rat::from(k as u32 + 1)
        };
        table.push(next);
    }
    Ok(table[n].clone())
}

/// The rational `r` with `ζ(2k) = r π^{2k}`.
pub fn even_zeta_rational(k: u32) -> Rat {
    assert!(k >= 1, "zeta(0) is not an even zeta value here");
    let b = bernoulli(2 * k as usize).expect("even index");
    let sign = if k % 2 == 1 { 1 } else { -1 };
    b * pow2(2 * k as i64 - 1) / rat_factorial(2 * k) * Rat::from(sign)
}

/// Coefficients `f_k = (1 - 2^{1-2k}) B_{2k} / (2k)!` of the single-factor
/// expansion, for `k = 0..=l`.
fn single_factor(l: u32) -> Vec<Rat> {
    (0..=l)
        .map(|k| {
            let b = bernoulli(2 * k as usize).expect("even index");
            (Rat::from(1) - pow2(1 - 2 * k as i64)) * b / rat_factorial(2 * k)
        })
        .collect()
}

/// Laurent coefficient `γ_{l,m}`: `(-1)^m 2^l` times the `m`-fold
/// convolution power of the single-factor sequence, read at index `l`.
pub fn gamma_lm(l: u32, m: u32) -> Rat {
    assert!(m >= 1, "order must be positive");
    let f = single_factor(l);
    let mut acc = f.clone();
    for _ in 1..m {
        let mut next = vec![Rat::new(); f.len()];
        for (i, a) in acc.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in f.iter().enumerate().take(f.len() - i) {
                next[i + j] += Rat::from(a * b);
            }
        }
        acc = next;
    }
    let sign = if m % 2 == 0 { 1 } else { -1 };
    acc.swap_remove(l as usize) * pow2(l as i64) * Rat::from(sign)
}
