use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ansatz::FitReport;
use super::FamilyTag;
use crate::arith::parse_rat;
use crate::error::{Error, Result};
use crate::zring::{MonoKey, PolyX, RatFunX, VFactor, ZRingElem};

pub const FIXTURE_SCHEMA: &str = "berndt-forge/fixtures/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub v: u8,
    pub vp: u8,
    /// Exponents of `z, z', z'', ...`
    pub jets: Vec<u32>,
    /// Denominator `x^den_x (x-1)^den_xm1`.
    pub den_x: u32,
    pub den_xm1: u32,
    /// Numerator coefficients, lowest degree first, as `p/q` strings.
    pub num: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub dimension: usize,
    pub sample_digits: u32,
    pub samples: Vec<String>,
    pub heldout: Vec<String>,
    /// Absent when the held-out values agreed exactly.
    #[serde(default)]
    pub heldout_log10_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseFixture {
    pub index: u32,
    pub monomials: Vec<MonomialRecord>,
    pub certification: Certification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub schema: String,
    pub family: String,
    pub bases: Vec<BaseFixture>,
}

impl FixtureFile {
    pub fn empty(tag: FamilyTag) -> Self {
        FixtureFile { schema: FIXTURE_SCHEMA.into(), family: tag.name().into(), bases: Vec::new() }
    }
}

pub fn elem_to_records(e: &ZRingElem) -> Vec<MonomialRecord> {
    e.terms()
        .map(|(k, c)| {
            let (dx, dxm1) = c.den_exponents();
            MonomialRecord {
                v: k.ev() as u8,
                vp: k.evp() as u8,
                jets: k.jets.clone(),
                den_x: dx,
                den_xm1: dxm1,
                num: c.num().coeffs().iter().map(|r| r.to_string()).collect(),
            }
        })
        .collect()
}

pub fn records_to_elem(records: &[MonomialRecord]) -> std::result::Result<ZRingElem, String> {
    let mut e = ZRingElem::zero();
    for (i, r) in records.iter().enumerate() {
        let v = match (r.v, r.vp) {
            (0, 0) => VFactor::One,
            (1, 0) => VFactor::V,
            (0, 1) => VFactor::VPrime,
            _ => return Err(format!("monomial {i}: bad v/v' exponents ({}, {})", r.v, r.vp)),
        };
        let num = r
            .num
            .iter()
            .map(|s| parse_rat(s).ok_or_else(|| format!("monomial {i}: bad rational {s:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let key = MonoKey::new(v, r.jets.clone());
        if e.coeff(&key).is_some() {
            return Err(format!("monomial {i}: duplicate key"));
        }
        let c = RatFunX::new(PolyX::new(num), r.den_x, r.den_xm1);
        if c.is_zero() {
            return Err(format!("monomial {i}: zero coefficient"));
        }
        e.add_term(key, c);
    }
    Ok(e)
}

/// Frozen fitted bases for the two families whose closed forms are only
/// known by shape.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureSet {
    files: BTreeMap<FamilyTag, FixtureFile>,
}

const EMBEDDED_SBAR: &str = include_str!("../../fixtures/sbar.json");
const EMBEDDED_S2: &str = include_str!("../../fixtures/s2.json");

pub const FITTED_FAMILIES: [FamilyTag; 2] = [FamilyTag::Sbar, FamilyTag::S];

fn file_name(tag: FamilyTag) -> String {
    format!("{}.json", tag.name())
}

impl FixtureSet {
    pub fn empty() -> Self {
        FixtureSet { files: FITTED_FAMILIES.iter().map(|&t| (t, FixtureFile::empty(t))).collect() }
    }

    fn parse(tag: FamilyTag, text: &str, origin: &str) -> Result<FixtureFile> {
        let f: FixtureFile =
            serde_json::from_str(text).map_err(|e| Error::Fixture(format!("{origin}: {e}")))?;
        if f.schema != FIXTURE_SCHEMA {
            return Err(Error::Fixture(format!("{origin}: unknown schema {:?}", f.schema)));
        }
        if f.family != tag.name() {
            return Err(Error::Fixture(format!("{origin}: family {:?}, expected {:?}", f.family, tag.name())));
        }
        Ok(f)
    }

    /// The fixtures compiled into the crate.
    pub fn embedded() -> Result<Self> {
        let mut files = BTreeMap::new();
        files.insert(FamilyTag::Sbar, Self::parse(FamilyTag::Sbar, EMBEDDED_SBAR, "embedded sbar.json")?);
        files.insert(FamilyTag::S, Self::parse(FamilyTag::S, EMBEDDED_S2, "embedded s2.json")?);
        Ok(FixtureSet { files })
    }

    /// Reads `sbar.json` and `s2.json` from `dir`; a missing file counts as
    /// empty.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let mut set = Self::empty();
        for tag in FITTED_FAMILIES {
            let path = dir.join(file_name(tag));
            if !path.exists() {
                continue;
            }
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
            set.files.insert(tag, Self::parse(tag, &text, &path.display().to_string())?);
        }
        Ok(set)
    }

    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::Fixture(format!("{}: {e}", dir.display())))?;
        for (tag, file) in &self.files {
            let path = dir.join(file_name(*tag));
            let text = serde_json::to_string_pretty(file).expect("serializable") + "\n";
            std::fs::write(&path, text).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }

    pub fn file(&self, tag: FamilyTag) -> Option<&FixtureFile> {
        self.files.get(&tag)
    }

    pub fn indices(&self, tag: FamilyTag) -> Vec<u32> {
        self.files.get(&tag).map(|f| f.bases.iter().map(|b| b.index).collect()).unwrap_or_default()
    }

    pub fn get(&self, tag: FamilyTag, index: u32) -> Option<Result<ZRingElem>> {
        let file = self.files.get(&tag)?;
        let base = file.bases.iter().find(|b| b.index == index)?;
        Some(records_to_elem(&base.monomials).map_err(|e| {
            Error::Fixture(format!("{} index {index}: {e}", file_name(tag)))
        }))
    }

    pub fn insert(&mut self, tag: FamilyTag, index: u32, elem: &ZRingElem, report: &FitReport) {
        let file = self.files.entry(tag).or_insert_with(|| FixtureFile::empty(tag));
        file.bases.retain(|b| b.index != index);
        file.bases.push(BaseFixture {
            index,
            monomials: elem_to_records(elem),
            certification: Certification {
                dimension: report.dimension,
                sample_digits: report.digits,
                samples: report.samples.iter().map(|r| r.to_string()).collect(),
                heldout: report.heldout.iter().map(|r| r.to_string()).collect(),
                heldout_log10_error: Some((report.heldout_log10_error * 10.0).round() / 10.0)
                    .filter(|e| e.is_finite()),
            },
        });
        file.bases.sort_by_key(|b| b.index);
    }

    /// Mutable access for negative tests and tooling.
    pub fn file_mut(&mut self, tag: FamilyTag) -> &mut FixtureFile {
        self.files.entry(tag).or_insert_with(|| FixtureFile::empty(tag))
    }
}
