//! The four base families of hyperbolic sums, their closed forms in the
//! z-ring, the ansatz fitter for the forms only known by shape, and the
//! reduction of power-`m` sums to derivatives of base sums.

mod ansatz;
mod bases;
mod fixtures;
mod library;
mod reduce;

pub use ansatz::{certify, fit_ansatz, fit_ansatz_with, AnsatzShape, FitOptions, FitReport, Template};
pub use bases::{
    cprime_base, cprime_shape, ctilde_base, ctilde_shape, default_sigma_bound, s2_base, s2_shape, sbar_base,
    sbar_shape,
};
pub use fixtures::{
    elem_to_records, records_to_elem, BaseFixture, Certification, FixtureFile, FixtureSet, MonomialRecord,
    FITTED_FAMILIES, FIXTURE_SCHEMA,
};
pub use library::{fit_base, BaseLibrary};
pub use reduce::{base_power, family_elem, min_base_index, reduce_power, ReductionTerm};

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// `Σ (-1)^{n-1} n^p / sinh^m(n y)`
    Sbar,
    /// `Σ (-1)^{n-1} ñ^p / cosh^m(ñ y)` with `ñ = n - 1/2`
    Ctilde,
    /// `Σ ñ^p / cosh^m(ñ y)`
    Cprime,
    /// `Σ n^p / sinh^m(n y)`
    S,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Sbar => "sbar",
            FamilyTag::Ctilde => "ctilde",
            FamilyTag::Cprime => "cprime",
            FamilyTag::S => "s2",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyTag> {
        match s {
            "sbar" => Some(FamilyTag::Sbar),
            "ctilde" => Some(FamilyTag::Ctilde),
            "cprime" => Some(FamilyTag::Cprime),
            "s2" | "s" => Some(FamilyTag::S),
            _ => None,
        }
    }

    /// Parities `(p odd, m odd)` of the combination used by the pipeline.
    fn legal_parities(self) -> (bool, bool) {
        match self {
            FamilyTag::Sbar | FamilyTag::Ctilde => (true, true),
            FamilyTag::Cprime | FamilyTag::S => (false, false),
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A hyperbolic sum family with exponent `p` and power `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SumFamily {
    pub tag: FamilyTag,
    pub p: u32,
    pub m: u32,
}

impl SumFamily {
    /// A family in one of the four parity classes the reduction handles.
    pub fn legal(tag: FamilyTag, p: u32, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("power m must be positive".into()));
        }
        let (p_odd, m_odd) = tag.legal_parities();
        if (p % 2 == 1) != p_odd || (m % 2 == 1) != m_odd {
            return Err(Error::InvalidSpec(format!(
                "{tag} needs p {} and m {}, got p = {p}, m = {m}",
                if p_odd { "odd" } else { "even" },
                if m_odd { "odd" } else { "even" },
            )));
        }
        Ok(SumFamily { tag, p, m })
    }

    /// Any family, for numerical summation only.
    pub fn any(tag: FamilyTag, p: u32, m: u32) -> Self {
        SumFamily { tag, p, m }
    }
}

impl fmt::Display for SumFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(p={}, m={})", self.tag, self.p, self.m)
    }
}
