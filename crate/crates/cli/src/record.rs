use serde::{Deserialize, Serialize};

use berndt_core::arith::parse_rat;
use berndt_core::{IntegralSpec, QXYPoly, Sign};

pub const OUTPUT_SCHEMA: &str = "berndt-forge/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecEcho {
    pub a: u32,
    pub m: u32,
    pub sign: String,
}

/// One monomial `coeff · X^x_deg · Y^y_deg` with `coeff` as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub coeff: String,
    pub x_deg: u32,
    pub y_deg: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    #[serde(rename = "quadValue")]
    pub quad_value: String,
    #[serde(rename = "absDiff")]
    pub abs_diff: String,
    /// Whole decimal digits of agreement.
    pub digits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: String,
    pub spec: SpecEcho,
    pub poly: Vec<PolyTerm>,
    pub latex: String,
    pub numeric: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

impl OutputRecord {
    pub fn new(spec: &IntegralSpec, poly: &QXYPoly, numeric: String) -> Self {
        // QXYPoly iterates in (x_deg, y_deg) order already
        let terms = poly
            .terms()
            .map(|(&(x, y), c)| PolyTerm { coeff: format!("{}/{}", c.numer(), c.denom()), x_deg: x, y_deg: y })
            .collect();
        OutputRecord {
            schema: OUTPUT_SCHEMA.into(),
            spec: SpecEcho { a: spec.a(), m: spec.m(), sign: spec.sign().name().into() },
            poly: terms,
            latex: poly.to_latex(),
            numeric,
            verification: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let r: OutputRecord = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if r.schema != OUTPUT_SCHEMA {
            return Err(format!("unknown schema {:?}", r.schema));
        }
        Ok(r)
    }

    pub fn spec(&self) -> Result<IntegralSpec, String> {
        let sign = Sign::parse(&self.spec.sign).ok_or_else(|| format!("bad sign {:?}", self.spec.sign))?;
        IntegralSpec::new(self.spec.a, self.spec.m, sign).map_err(|e| e.to_string())
    }

    /// The exact polynomial; coefficients must be in lowest terms.
    pub fn poly(&self) -> Result<QXYPoly, String> {
        let mut out = QXYPoly::zero();
        for t in &self.poly {
            let c = parse_rat(&t.coeff).ok_or_else(|| format!("bad rational {:?}", t.coeff))?;
            if format!("{}/{}", c.numer(), c.denom()) != t.coeff {
                return Err(format!("{:?} is not in lowest terms", t.coeff));
            }
            out.add_term(t.x_deg, t.y_deg, c);
        }
        Ok(out)
    }
}
