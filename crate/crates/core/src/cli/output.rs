//! CSV and JSON encodings of command output.
//!
//! JSON documents look like
//! `{"schema": 1, "kind": ..., "params": {...}, "meta": {...}, "data": [...]}`
//! with every rational written as a reduced `"p/q"` string. CSV output has a
//! header row and, unless suppressed, leading `# key: value` metadata lines.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{BiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::identities::report::{ParamValue, Params};
use crate::identities::VerifyReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Numbers,
    Polys,
    Apoly,
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Numbers(Vec<(usize, Rational)>),
    Polys(Vec<(usize, UniPoly)>),
    APoly(Vec<(usize, BiPoly)>),
    /// `A` entries with `s` already substituted.
    APolySubst(Vec<(usize, UniPoly)>),
    Verify(Vec<VerifyReport>),
}

impl Payload {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::Numbers(_) => Kind::Numbers,
            Payload::Polys(_) => Kind::Polys,
            Payload::APoly(_) | Payload::APolySubst(_) => Kind::Apoly,
            Payload::Verify(_) => Kind::Verify,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub generator: String,
    pub generated_at_unix: u64,
}

impl Meta {
    pub fn now() -> Self {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self { generator: format!("hyperbern {}", env!("CARGO_PKG_VERSION")), generated_at_unix: secs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputRecord {
    pub params: Params,
    pub meta: Option<Meta>,
    pub payload: Payload,
}

#[derive(Serialize, Deserialize)]
struct NumberRow {
    n: usize,
    #[serde(with = "rational::serde_rational")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct PolyRow {
    n: usize,
    coeffs: UniPoly,
}

#[derive(Serialize, Deserialize)]
struct APolyRow<T> {
    i: usize,
    coeffs: T,
}

#[derive(Serialize, Deserialize)]
struct JsonDoc {
    schema: u32,
    kind: Kind,
    params: Params,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    meta: Option<Meta>,
    data: serde_json::Value,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::InvalidParameter(format!("malformed JSON document: {e}"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidParameter(format!("malformed CSV: {e}"))
}

impl OutputRecord {
    pub fn to_json(&self) -> Result<String> {
        let data = match &self.payload {
            Payload::Numbers(rows) => serde_json::to_value(
                rows.iter().map(|(n, v)| NumberRow { n: *n, value: v.clone() }).collect::<Vec<_>>(),
            ),
            Payload::Polys(rows) => serde_json::to_value(
                rows.iter().map(|(n, p)| PolyRow { n: *n, coeffs: p.clone() }).collect::<Vec<_>>(),
            ),
            Payload::APoly(rows) => serde_json::to_value(
                rows.iter().map(|(i, a)| APolyRow { i: *i, coeffs: a.clone() }).collect::<Vec<_>>(),
            ),
            Payload::APolySubst(rows) => serde_json::to_value(
                rows.iter().map(|(i, p)| APolyRow { i: *i, coeffs: p.clone() }).collect::<Vec<_>>(),
            ),
            Payload::Verify(reports) => serde_json::to_value(reports),
        }
        .map_err(json_err)?;
        let doc = JsonDoc {
            schema: SCHEMA_VERSION,
            kind: self.payload.kind(),
            params: self.params.clone(),
            meta: self.meta.clone(),
            data,
        };
        let mut s = serde_json::to_string_pretty(&doc).map_err(json_err)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: JsonDoc = serde_json::from_str(text).map_err(json_err)?;
        if doc.schema != SCHEMA_VERSION {
            return Err(Error::InvalidParameter(format!("unsupported schema {}", doc.schema)));
        }
        let payload = match doc.kind {
            Kind::Numbers => {
                let rows: Vec<NumberRow> = serde_json::from_value(doc.data).map_err(json_err)?;
                Payload::Numbers(rows.into_iter().map(|r| (r.n, r.value)).collect())
            }
            Kind::Polys => {
                let rows: Vec<PolyRow> = serde_json::from_value(doc.data).map_err(json_err)?;
                Payload::Polys(rows.into_iter().map(|r| (r.n, r.coeffs)).collect())
            }
            Kind::Apoly if doc.params.contains_key("subst_s") => {
                let rows: Vec<APolyRow<UniPoly>> = serde_json::from_value(doc.data).map_err(json_err)?;
                Payload::APolySubst(rows.into_iter().map(|r| (r.i, r.coeffs)).collect())
            }
            Kind::Apoly => {
                let rows: Vec<APolyRow<BiPoly>> = serde_json::from_value(doc.data).map_err(json_err)?;
                Payload::APoly(rows.into_iter().map(|r| (r.i, r.coeffs)).collect())
            }
            Kind::Verify => Payload::Verify(serde_json::from_value(doc.data).map_err(json_err)?),
        };
        Ok(Self { params: doc.params, meta: doc.meta, payload })
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        if let Some(meta) = &self.meta {
            out.push_str(&format!("# generator: {}\n", meta.generator));
            out.push_str(&format!("# generated_at_unix: {}\n", meta.generated_at_unix));
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        match &self.payload {
            Payload::Numbers(rows) => {
                w.write_record(["n", "value"]).map_err(csv_err)?;
                for (n, v) in rows {
                    w.write_record([n.to_string(), rational::to_string(v)]).map_err(csv_err)?;
                }
            }
            Payload::Polys(rows) | Payload::APolySubst(rows) => {
                let key = if matches!(self.payload, Payload::Polys(_)) { "n" } else { "i" };
                let width = rows.iter().map(|(_, p)| p.coeffs().len()).max().unwrap_or(0).max(1);
                let mut header = vec![key.to_string()];
                header.extend((0..width).map(|k| format!("c{k}")));
                w.write_record(&header).map_err(csv_err)?;
                for (n, p) in rows {
                    let mut rec = vec![n.to_string()];
                    let mut cs: Vec<String> = p.coeffs().iter().map(rational::to_string).collect();
                    if cs.is_empty() {
                        cs.push("0".into());
                    }
                    cs.resize(width, String::new());
                    rec.extend(cs);
                    w.write_record(&rec).map_err(csv_err)?;
                }
            }
            Payload::APoly(rows) => {
                w.write_record(["i", "x_power", "s_power", "value"]).map_err(csv_err)?;
                for (i, a) in rows {
                    for (xp, row) in a.to_matrix().iter().enumerate() {
                        for (sp, v) in row.iter().enumerate() {
                            w.write_record([i.to_string(), xp.to_string(), sp.to_string(), rational::to_string(v)])
                                .map_err(csv_err)?;
                        }
                    }
                }
            }
            Payload::Verify(reports) => {
                w.write_record(["identity", "status", "mode", "cells_checked", "report"]).map_err(csv_err)?;
                for r in reports {
                    let json = serde_json::to_string(r).map_err(json_err)?;
                    let status = serde_json::to_value(r.status).map_err(json_err)?;
                    w.write_record([
                        r.identity.clone(),
                        status.as_str().unwrap_or_default().to_string(),
                        r.mode.to_string(),
                        r.cells_checked.to_string(),
                        json,
                    ])
                    .map_err(csv_err)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    /// Parses CSV produced by [`to_csv`](Self::to_csv). `kind` selects the
    /// table layout; parameters are not part of the CSV encoding.
    pub fn payload_from_csv(kind: Kind, text: &str) -> Result<Payload> {
        let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        let mut rd = csv::ReaderBuilder::new().flexible(true).from_reader(body.as_bytes());
        let headers = rd.headers().map_err(csv_err)?.clone();
        let records: Vec<csv::StringRecord> = rd.records().collect::<std::result::Result<_, _>>().map_err(csv_err)?;
        let index = |s: &str| s.parse::<usize>().map_err(|_| Error::InvalidParameter(format!("bad index {s:?}")));
        match kind {
            Kind::Numbers => records
                .iter()
                .map(|r| Ok((index(&r[0])?, rational::parse(&r[1])?)))
                .collect::<Result<_>>()
                .map(Payload::Numbers),
            Kind::Polys | Kind::Apoly if headers.get(1) == Some("c0") => {
                let rows = records
                    .iter()
                    .map(|r| {
                        let coeffs = r
                            .iter()
                            .skip(1)
                            .filter(|c| !c.is_empty())
                            .map(rational::parse)
                            .collect::<Result<Vec<_>>>()?;
                        Ok((index(&r[0])?, UniPoly::from_coeffs(coeffs)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(if kind == Kind::Polys { Payload::Polys(rows) } else { Payload::APolySubst(rows) })
            }
            Kind::Polys => Err(Error::InvalidParameter("polys CSV needs c0.. columns".into())),
            Kind::Apoly => {
                let mut entries: BTreeMap<usize, Vec<Vec<Rational>>> = BTreeMap::new();
                for r in &records {
                    let (i, xp, sp) = (index(&r[0])?, index(&r[1])?, index(&r[2])?);
                    let m = entries.entry(i).or_default();
                    if m.len() <= xp {
                        m.resize(xp + 1, Vec::new());
                    }
                    if m[xp].len() <= sp {
                        m[xp].resize(sp + 1, Rational::from_integer(0.into()));
                    }
                    m[xp][sp] = rational::parse(&r[3])?;
                }
                Ok(Payload::APoly(entries.into_iter().map(|(i, m)| (i, BiPoly::from_matrix(m))).collect()))
            }
            Kind::Verify => records
                .iter()
                .map(|r| serde_json::from_str(&r[4]).map_err(json_err))
                .collect::<Result<_>>()
                .map(Payload::Verify),
        }
    }
}

pub fn param(k: &str, v: impl Into<ParamValue>) -> (String, ParamValue) {
    (k.to_string(), v.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn numbers_record() -> OutputRecord {
        OutputRecord {
            params: [param("N", 1u32), param("max_n", 2usize)].into_iter().collect(),
            meta: None,
            payload: Payload::Numbers(vec![(0, int(1)), (1, rat(-1, 2).unwrap()), (2, rat(1, 6).unwrap())]),
        }
    }

    #[test]
    fn numbers_csv_layout() {
        let csv = numbers_record().to_csv().unwrap();
        assert_eq!(csv, "n,value\n0,1\n1,-1/2\n2,1/6\n");
    }

    #[test]
    fn json_has_schema_and_string_rationals() {
        let json = numbers_record().to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["kind"], "numbers");
        assert_eq!(v["data"][1]["value"], "-1/2");
        assert!(v.get("meta").is_none());
        assert_eq!(OutputRecord::from_json(&json).unwrap(), numbers_record());
    }

    #[test]
    fn meta_lines_are_skipped_when_parsing() {
        let mut rec = numbers_record();
        rec.meta = Some(Meta { generator: "hyperbern test".into(), generated_at_unix: 5 });
        let csv = rec.to_csv().unwrap();
        assert!(csv.starts_with("# generator"));
        assert_eq!(OutputRecord::payload_from_csv(Kind::Numbers, &csv).unwrap(), rec.payload);
        assert_eq!(OutputRecord::from_json(&rec.to_json().unwrap()).unwrap(), rec);
    }

    #[test]
    fn wrong_schema_rejected() {
        let json = numbers_record().to_json().unwrap().replace("\"schema\": 1", "\"schema\": 2");
        assert!(OutputRecord::from_json(&json).is_err());
    }
}
