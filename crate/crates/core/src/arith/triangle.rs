use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriangleKind {
    /// `d^{2k}/dy^{2k} (1/sinh) = Σ_l B_{k,l} / sinh^{2l+1}`
    B,
    /// `(-1)^l B_{k,l}`, the same expansion for `1/cosh`.
    Btilde,
    /// `d^{2k}/dy^{2k} (1/sinh²) = Σ_l D_{k,l} / sinh^{2l+2}`
    D,
    /// `(-1)^l D_{k,l}`, the same expansion for `1/cosh²`.
    Dtilde,
}

/// Lower-triangular rational matrix together with its exact inverse.
/// Row `i` of both matrices has length `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTriangle {
    pub kind: TriangleKind,
    pub entries: Vec<Vec<Rat>>,
    pub inverse: Vec<Vec<Rat>>,
}

impl CoeffTriangle {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, k: usize, l: usize) -> Rat {
        self.entries[k].get(l).cloned().unwrap_or_default()
    }

    pub fn inverse_entry(&self, k: usize, l: usize) -> Rat {
        self.inverse[k].get(l).cloned().unwrap_or_default()
    }

    fn truncated(&self, size: usize) -> CoeffTriangle {
        CoeffTriangle {
            kind: self.kind,
            entries: self.entries[..size].to_vec(),
            inverse: self.inverse[..size].to_vec(),
        }
    }
}

/// Terms `c · h^e · w^k` where `w = 1/g`, `g' = h`, `h' = g` and
/// `h² = g² + pyth`. With `g = sinh` we have `pyth = 1`; with `g = cosh`,
/// `pyth = -1`. The exponent `e` stays in `{0, 1}`.
#[derive(Debug, Clone, Default)]
pub(crate) struct HyperbolicLaurent {
    pub(crate) terms: BTreeMap<(u8, u32), Rat>,
    pub(crate) pyth: i64,
}

impl HyperbolicLaurent {
    pub(crate) fn power(pyth: i64, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, k), Rat::from(1));
        HyperbolicLaurent { terms, pyth }
    }

    fn add_term(out: &mut BTreeMap<(u8, u32), Rat>, key: (u8, u32), c: Rat) {
        let slot = out.entry(key).or_default();
        *slot += c;
        if *slot == 0 {
            out.remove(&key);
        }
    }

    pub(crate) fn derivative(&self) -> Self {
        let mut out = BTreeMap::new();
        for (&(e, k), c) in &self.terms {
            if e == 0 {
                // d(w^k) = -k h w^{k+1}
                if k > 0 {
                    Self::add_term(&mut out, (1, k + 1), Rat::from(-(k as i64)) * c);
                }
            } else {
                // d(h w^k) = g w^k - k h² w^{k+1} = (1 - k) w^{k-1} - k·pyth·w^{k+1}
                if k != 1 {
                    assert!(k > 0, "positive powers of g never arise");
                    Self::add_term(&mut out, (0, k - 1), Rat::from(1 - k as i64) * c);
                }
                Self::add_term(&mut out, (0, k + 1), Rat::from(-(k as i64) * self.pyth) * c);
            }
        }
        HyperbolicLaurent { terms: out, pyth: self.pyth }
    }

    pub(crate) fn coeff(&self, e: u8, k: u32) -> Rat {
        self.terms.get(&(e, k)).cloned().unwrap_or_default()
    }
}

/// Rows `0..size` of the expansion of even derivatives of `w^base` in powers
/// `w^{base + 2l}`.
fn derivative_rows(base: u32, size: usize) -> Vec<Vec<Rat>> {
    let mut cur = HyperbolicLaurent::power(1, base);
    let mut rows = Vec::with_capacity(size);
    for k in 0..size {
        if k > 0 {
            cur = cur.derivative().derivative();
        }
        debug_assert!(cur.terms.keys().all(|&(e, _)| e == 0));
        rows.push((0..=k).map(|l| cur.coeff(0, base + 2 * l as u32)).collect());
    }
    rows
}

fn invert_lower(entries: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = entries.len();
    let mut inv: Vec<Vec<Rat>> = (0..n).map(|i| vec![Rat::new(); i + 1]).collect();
    for j in 0..n {
        inv[j][j] = Rat::from(entries[j][j].recip_ref());
        for i in j + 1..n {
            let mut acc = Rat::new();
            for t in j..i {
                acc += Rat::from(&entries[i][t] * &inv[t][j]);
            }
            inv[i][j] = -acc / &entries[i][i];
        }
    }
    inv
}

fn signed(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(l, c)| if l % 2 == 1 { Rat::from(-c) } else { c.clone() })
                .collect()
        })
        .collect()
}

fn build(kind: TriangleKind, size: usize) -> CoeffTriangle {
    let rows = match kind {
        TriangleKind::B | TriangleKind::Btilde => derivative_rows(1, size),
        TriangleKind::D | TriangleKind::Dtilde => derivative_rows(2, size),
    };
    let entries = match kind {
        TriangleKind::B | TriangleKind::D => rows,
        TriangleKind::Btilde | TriangleKind::Dtilde => signed(&rows),
    };
    let inverse = invert_lower(&entries);
    CoeffTriangle { kind, entries, inverse }
}

static CACHE: Mutex<Option<HashMap<TriangleKind, Arc<CoeffTriangle>>>> = Mutex::new(None);

/// The triangle of `kind` with rows `0..=k`.
pub fn triangle(kind: TriangleKind, k: usize) -> CoeffTriangle {
    let size = k + 1;
    {
        let guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(t) = guard.as_ref().and_then(|m| m.get(&kind)) {
            if t.size() >= size {
                return t.truncated(size);
            }
        }
    }
    let built = Arc::new(build(kind, size.max(8)));
    let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    let map = guard.get_or_insert_with(HashMap::new);
    let keep = match map.get(&kind) {
        Some(old) if old.size() >= built.size() => old.clone(),
        _ => built,
    };
    map.insert(kind, keep.clone());
    keep.truncated(size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial, rat};

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from(x)).collect()
    }

    #[test]
    fn hand_rows() {
        let b = triangle(TriangleKind::B, 2);
        assert_eq!(b.entries[0], ints(&[1]));
        assert_eq!(b.entries[1], ints(&[1, 2]));
        assert_eq!(b.entries[2], ints(&[1, 20, 24]));
        let d = triangle(TriangleKind::D, 1);
        assert_eq!(d.entries[1], ints(&[4, 6]));
    }

    #[test]
    fn diagonals_and_first_column() {
        let b = triangle(TriangleKind::B, 12);
        let d = triangle(TriangleKind::D, 12);
        for k in 0..=12 {
            assert_eq!(b.entry(k, k), factorial(2 * k as u32));
            assert_eq!(b.entry(k, 0), 1);
            assert_eq!(d.entry(k, k), factorial(2 * k as u32 + 1));
        }
    }

    #[test]
    fn sech_rows_are_signed_sinh_rows() {
        for (kind, base) in [(TriangleKind::Btilde, 1u32), (TriangleKind::Dtilde, 2)] {
            let t = triangle(kind, 8);
            let mut cur = HyperbolicLaurent::power(-1, base);
            for k in 0..=8 {
                if k > 0 {
                    cur = cur.derivative().derivative();
                }
                for l in 0..=k {
                    assert_eq!(cur.coeff(0, base + 2 * l as u32), t.entry(k, l), "{kind:?} {k} {l}");
                }
            }
        }
    }

    #[test]
    fn inverses_exact() {
        for kind in [TriangleKind::B, TriangleKind::Btilde, TriangleKind::D, TriangleKind::Dtilde] {
            let t = triangle(kind, 12);
            for i in 0..t.size() {
                for j in 0..=i {
                    let mut acc = Rat::new();
                    for s in j..=i {
                        acc += Rat::from(&t.entries[i][s] * &t.inverse[s][j]);
                    }
                    assert_eq!(acc, if i == j { 1 } else { 0 });
                }
            }
        }
    }

    #[test]
    fn printed_b_recurrence() {
        let b = triangle(TriangleKind::B, 12);
        for k in 1..=12usize {
            for l in 1..=k {
                let l2 = 2 * l as i64;
                let lhs = b.entry(k, l);
                let rhs = Rat::from((l2 - 1) * l2) * b.entry(k - 1, l - 1)
                    + Rat::from((l2 + 1) * (l2 + 1)) * b.entry(k - 1, l);
                assert_eq!(lhs, rhs, "k={k} l={l}");
            }
        }
    }

    #[test]
    fn normalized_sinh_square_entry() {
        // (1/3!) d²/dy² (1/sinh²) = (2/3)/sinh² + 1/sinh⁴
        let d = triangle(TriangleKind::D, 1);
        assert_eq!(d.entry(1, 0) / Rat::from(6), rat(2, 3));
        assert_eq!(d.entry(1, 1) / Rat::from(6), 1);
    }
}
