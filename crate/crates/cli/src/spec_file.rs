//! The SpecFile input format.

use autvar::algebra::rat::{fmt_rat, parse_rat};
use autvar::algebra::{MultiPoly, Var, Vars};
use autvar::varieties::RawPresentation;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub const DEFAULT_ENUM_ORDER_BOUND: u64 = 360;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub weights: Vec<u32>,
    pub x_present: bool,
    #[serde(rename = "P")]
    pub p: Vec<TermRecord>,
    #[serde(default)]
    pub options: SpecOptions,
}

/// One term coeff·y^e·z^k of P.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub y_exponents: Vec<u32>,
    pub z_exponent: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecOptions {
    #[serde(default = "default_normalize")]
    pub normalize: bool,
    #[serde(default = "default_bound")]
    pub enum_order_bound: u64,
}

fn default_normalize() -> bool {
    true
}

fn default_bound() -> u64 {
    DEFAULT_ENUM_ORDER_BOUND
}

impl Default for SpecOptions {
    fn default() -> Self {
        SpecOptions { normalize: true, enum_order_bound: DEFAULT_ENUM_ORDER_BOUND }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid spec: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> SpecError {
    SpecError::Invalid(msg.into())
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files serialize")
    }

    pub fn vars(&self) -> Vars {
        Vars::new(self.weights.len(), self.x_present)
    }

    /// Checks the file-level invariants and builds P.
    pub fn to_raw(&self) -> Result<RawPresentation, SpecError> {
        let m = self.weights.len();
        if let Some(i) = self.weights.iter().position(|&k| k == 0) {
            return Err(invalid(format!("weights must be positive integers (weights[{}] = 0)", i)));
        }
        let vars = self.vars();
        let mut p = MultiPoly::zero(vars);
        for (i, t) in self.p.iter().enumerate() {
            if t.y_exponents.len() != m {
                return Err(invalid(format!("P[{}].y_exponents has length {}, expected len(weights) = {}", i, t.y_exponents.len(), m)));
            }
            let c = parse_rat(&t.coeff).ok_or_else(|| invalid(format!("P[{}].coeff {:?} is not an exact rational \"num/den\"", i, t.coeff)))?;
            let mut e = vec![0; vars.len()];
            e[vars.index(Var::Z)] = t.z_exponent;
            for (j, &k) in t.y_exponents.iter().enumerate() {
                e[vars.index(Var::Y(j))] = k;
            }
            p.add_term(e, c);
        }
        let d = p.degree_in(Var::Z);
        if d < 2 {
            return Err(invalid(format!("z-degree of P must be at least 2 (got {})", d)));
        }
        if p.coeff_of(Var::Z, d).as_constant().is_none_or(|c| !c.is_one()) {
            return Err(invalid("leading z-term of P must be monic (coefficient 1 on z^d, free of y)"));
        }
        Ok(RawPresentation { weights: self.weights.clone(), x_present: self.x_present, p })
    }

    /// The file describing a presentation, terms in descending monomial order.
    pub fn from_raw(raw: &RawPresentation, options: SpecOptions) -> Self {
        let vars = raw.p.vars();
        let p = raw
            .p
            .terms()
            .iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| TermRecord {
                y_exponents: (0..vars.m).map(|j| e[vars.index(Var::Y(j))]).collect(),
                z_exponent: e[vars.index(Var::Z)],
                coeff: fmt_rat(c),
            })
            .collect();
        SpecFile { weights: raw.weights.clone(), x_present: raw.x_present, p, options }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use autvar::algebra::parse_poly;

    fn e4() -> SpecFile {
        let vars = Vars::new(2, true);
        let raw = RawPresentation { weights: vec![2, 2], x_present: true, p: parse_poly("z^3+z+y1-y2", vars).unwrap() };
        SpecFile::from_raw(&raw, SpecOptions::default())
    }

    #[test]
    fn raw_round_trip() {
        let f = e4();
        let raw = f.to_raw().unwrap();
        assert_eq!(SpecFile::from_raw(&raw, SpecOptions::default()), f);
        assert_eq!(SpecFile::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn options_default_when_absent() {
        let f = SpecFile::from_json(r#"{"weights":[2],"x_present":false,"P":[{"y_exponents":[0],"z_exponent":3,"coeff":"1/1"}]}"#).unwrap();
        assert_eq!(f.options, SpecOptions::default());
    }

    #[test]
    fn rejects_bad_input() {
        let mut f = e4();
        f.p[0].coeff = "0.5".into();
        assert!(matches!(f.to_raw(), Err(SpecError::Invalid(m)) if m.contains("exact rational")));
        let mut f = e4();
        f.p[0].y_exponents = vec![1];
        assert!(matches!(f.to_raw(), Err(SpecError::Invalid(m)) if m.contains("len(weights)")));
        let mut f = e4();
        f.p[0].coeff = "2/1".into();
        assert!(matches!(f.to_raw(), Err(SpecError::Invalid(m)) if m.contains("monic")));
        let mut f = e4();
        f.p.retain(|t| t.z_exponent < 2);
        assert!(matches!(f.to_raw(), Err(SpecError::Invalid(m)) if m.contains("at least 2")));
        assert!(matches!(SpecFile::from_json("{\"weights\": [2]}"), Err(SpecError::Json(_))));
    }
}
