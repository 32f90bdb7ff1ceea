use super::library::BaseLibrary;
use super::{FamilyTag, SumFamily};
use crate::arith::{triangle, TriangleKind};
use crate::error::{Error, Result};
use crate::zring::ZRingElem;
use crate::Rat;

/// One term `coeff · d^{deriv_order}/dy^{deriv_order}` of the base sum with
/// exponent `base_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTerm {
    pub deriv_order: u32,
    pub base_index: u32,
    pub coeff: Rat,
}

/// Smallest exponent whose base sum has a closed form.
pub fn min_base_index(tag: FamilyTag) -> u32 {
    match tag {
        FamilyTag::Sbar => 3,
        FamilyTag::Ctilde => 1,
        FamilyTag::Cprime | FamilyTag::S => 2,
    }
}

/// Power of sinh/cosh in the base sums: 1 for the odd families, 2 for the
/// even ones.
pub fn base_power(tag: FamilyTag) -> u32 {
    match tag {
        FamilyTag::Sbar | FamilyTag::Ctilde => 1,
        FamilyTag::Cprime | FamilyTag::S => 2,
    }
}

fn kind(tag: FamilyTag) -> TriangleKind {
    match tag {
        FamilyTag::Sbar => TriangleKind::B,
        FamilyTag::Ctilde => TriangleKind::Btilde,
        FamilyTag::S => TriangleKind::D,
        FamilyTag::Cprime => TriangleKind::Dtilde,
    }
}

/// Writes a power-`m` sum as a combination of even `y`-derivatives of base
/// sums.
///
/// Differentiating a base sum `2j` times multiplies each term by
/// `n^{2j}` and expands `1/sinh` (say) through row `j` of the triangle, so
/// the vector of derivatives is the triangle times the vector of power
/// sums at a common exponent. Row `k` of the inverse triangle undoes that.
pub fn reduce_power(target: &SumFamily) -> Result<Vec<ReductionTerm>> {
    let t = SumFamily::legal(target.tag, target.p, target.m)?;
    let k = (t.m - base_power(t.tag)) / 2;
    let lowest = i64::from(t.p) - 2 * i64::from(k);
    if lowest < i64::from(min_base_index(t.tag)) {
        return Err(Error::MissingClosedForm(format!(
            "{t} reduces to the {} base with exponent {lowest}, below the smallest available {}",
            t.tag,
            min_base_index(t.tag)
        )));
    }
    let tri = triangle(kind(t.tag), k as usize);
    Ok((0..=k)
        .map(|j| ReductionTerm {
            deriv_order: 2 * j,
            base_index: t.p - 2 * j,
            coeff: tri.inverse_entry(k as usize, j as usize),
        })
        .filter(|r| r.coeff != 0)
        .collect())
}

/// The closed form of a power-`m` sum as a ring element.
pub fn family_elem(target: &SumFamily, lib: &BaseLibrary) -> Result<ZRingElem> {
    let mut acc = ZRingElem::zero();
    for term in reduce_power(target)? {
        let d = lib.derivative(target.tag, term.base_index, term.deriv_order)?;
        acc = &acc + &d.scale(&term.coeff);
    }
    Ok(acc)
}
