use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertMode {
    /// Exact comparison of numbers, polynomials or series.
    Exact,
    /// Exhaustive evaluation on `{0..n}^r`, a complete certificate.
    Grid,
    /// Seeded random rational points.
    Sample,
}

impl fmt::Display for CertMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertMode::Exact => "exact",
            CertMode::Grid => "grid",
            CertMode::Sample => "sample",
        };
        f.write_str(s)
    }
}

/// Integer parameters serialize as JSON numbers, rationals as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Rational(#[serde(with = "rational::serde_rational")] Rational),
}

impl ParamValue {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            ParamValue::Int(v) => Some(*v),
            ParamValue::Rational(_) => None,
        }
    }

    pub fn to_rational(&self) -> Rational {
        match self {
            ParamValue::Int(v) => rational::int(*v),
            ParamValue::Rational(q) => q.clone(),
        }
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<u32> for ParamValue {
    fn from(v: u32) -> Self {
        ParamValue::Int(i64::from(v))
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<Rational> for ParamValue {
    fn from(v: Rational) -> Self {
        ParamValue::Rational(v)
    }
}

/// One side of a compared instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Rational(#[serde(with = "rational::serde_rational")] Rational),
    Poly(UniPoly),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(q) => write!(f, "{q}"),
            Value::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl From<Rational> for Value {
    fn from(v: Rational) -> Self {
        Value::Rational(v)
    }
}

impl From<UniPoly> for Value {
    fn from(v: UniPoly) -> Self {
        Value::Poly(v)
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// A failing instance: which comparison, at which inputs, and both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub property: String,
    pub inputs: Params,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub identity: String,
    pub params: Params,
    pub status: Status,
    pub mode: CertMode,
    pub cells_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub sample_points: Vec<Vec<String>>,
    /// Set for cells outside the range where the identity is claimed.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub informational: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl VerifyReport {
    pub fn new(identity: &str, params: Params, mode: CertMode) -> Self {
        Self {
            identity: identity.to_string(),
            params,
            status: Status::Pass,
            mode,
            cells_checked: 0,
            counterexample: None,
            seed: None,
            sample_points: Vec::new(),
            informational: false,
            note: None,
        }
    }

    pub fn skipped(identity: &str, params: Params, reason: impl Into<String>) -> Self {
        let mut r = Self::new(identity, params, CertMode::Exact);
        r.status = Status::Skipped;
        r.note = Some(reason.into());
        r
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records a mismatch unless one was already recorded.
    pub fn fail(&mut self, cex: Counterexample) {
        if self.counterexample.is_none() {
            self.status = Status::Fail;
            self.counterexample = Some(cex);
        }
    }

    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).and_then(ParamValue::as_int)
    }

    /// Short `name{k=v,...}` label.
    pub fn label(&self) -> String {
        let ps: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| match v {
                ParamValue::Int(i) => format!("{k}={i}"),
                ParamValue::Rational(q) => format!("{k}={q}"),
            })
            .collect();
        format!("{}{{{}}}", self.identity, ps.join(","))
    }
}

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<const K: usize>(items: [(&str, ParamValue); K]) -> Params {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
