use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::ansatz::{fit_ansatz_with, FitOptions, FitReport};
use super::bases::{cprime_base, ctilde_base, default_sigma_bound, s2_shape, sbar_shape};
use super::fixtures::FixtureSet;
use super::reduce::{base_power, min_base_index};
use super::{FamilyTag, SumFamily};
use crate::error::{Error, Result};
use crate::zring::ZRingElem;

/// How many times the σ-degree bound may grow past its starting value.
const MAX_EXTRA_DEGREE: u32 = 3;

/// Fits the base sum with exponent `index` for one of the two shape-only
/// families, growing the σ-degree bound until the fit certifies.
pub fn fit_base(tag: FamilyTag, index: u32, opts: &FitOptions) -> Result<(ZRingElem, FitReport)> {
    check_index(tag, index)?;
    let target = SumFamily::legal(tag, index, base_power(tag))?;
    let (s, shape_of): (u32, fn(u32, u32) -> _) = match tag {
        FamilyTag::Sbar => ((index - 1) / 2, sbar_shape),
        FamilyTag::S => (index / 2, s2_shape),
        _ => return Err(Error::Fit(format!("{tag} has an explicit closed form"))),
    };
    let start = default_sigma_bound(s);
    let mut last = None;
    for extra in 0..=MAX_EXTRA_DEGREE {
        match fit_ansatz_with(&shape_of(s, start + extra), &target, opts) {
            Ok(r) => return Ok(r),
            Err(e @ Error::Certification(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn check_index(tag: FamilyTag, index: u32) -> Result<()> {
    let odd = matches!(tag, FamilyTag::Sbar | FamilyTag::Ctilde);
    if (index % 2 == 1) != odd {
        return Err(Error::InvalidSpec(format!("{tag} base needs an {} exponent, got {index}", if odd { "odd" } else { "even" })));
    }
    if index < min_base_index(tag) {
        return Err(Error::MissingClosedForm(format!("{tag} base with exponent {index}")));
    }
    Ok(())
}

/// Closed forms of the base sums and their `y`-derivatives, memoized.
///
/// The two shape-only families come from frozen fixtures when present and
/// are fitted on demand otherwise.
pub struct BaseLibrary {
    fixtures: FixtureSet,
    fit_options: FitOptions,
    derivs: Mutex<HashMap<(FamilyTag, u32), Vec<Arc<ZRingElem>>>>,
}

static GLOBAL: OnceLock<BaseLibrary> = OnceLock::new();

impl BaseLibrary {
    pub fn new(fixtures: FixtureSet) -> Self {
        BaseLibrary { fixtures, fit_options: FitOptions::default(), derivs: Mutex::new(HashMap::new()) }
    }

    /// Shared library backed by the embedded fixtures.
    pub fn global() -> &'static BaseLibrary {
        GLOBAL.get_or_init(|| BaseLibrary::new(FixtureSet::embedded().expect("embedded fixtures parse")))
    }

    pub fn fixtures(&self) -> &FixtureSet {
        &self.fixtures
    }

    fn compute_base(&self, tag: FamilyTag, index: u32) -> Result<ZRingElem> {
        check_index(tag, index)?;
        match tag {
            FamilyTag::Ctilde => Ok(ctilde_base((index - 1) / 2)),
            FamilyTag::Cprime => cprime_base(index / 2),
            FamilyTag::Sbar | FamilyTag::S => match self.fixtures.get(tag, index) {
                Some(r) => r,
                None => fit_base(tag, index, &self.fit_options).map(|(e, _)| e),
            },
        }
    }

    /// Closed form of the base sum of `tag` with exponent `index`.
    pub fn base(&self, tag: FamilyTag, index: u32) -> Result<Arc<ZRingElem>> {
        self.derivative(tag, index, 0)
    }

    /// `d^order/dy^order` of the base sum.
    pub fn derivative(&self, tag: FamilyTag, index: u32, order: u32) -> Result<Arc<ZRingElem>> {
        let key = (tag, index);
        let order = order as usize;
        let mut chain = {
            let guard = self.derivs.lock().unwrap_or_else(|e| e.into_inner());
            match guard.get(&key) {
                Some(c) if c.len() > order => return Ok(c[order].clone()),
                Some(c) => c.clone(),
                None => Vec::new(),
            }
        };
        if chain.is_empty() {
            chain.push(Arc::new(self.compute_base(tag, index)?));
        }
        while chain.len() <= order {
            let next = chain.last().expect("nonempty").ddy();
            chain.push(Arc::new(next));
        }
        let out = chain[order].clone();
        let mut guard = self.derivs.lock().unwrap_or_else(|e| e.into_inner());
        let slot = guard.entry(key).or_default();
        if slot.len() < chain.len() {
            *slot = chain;
        }
        Ok(out)
    }
}
