//! Flat per-prime output record shared by the CSV and JSON-lines writers.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sigmacount::{Branch, SigmaCountBreakdown};

pub const CSV_HEADER: &str = "p,branch,B2_num,B2_den,h_p,h_2p,h_3p,leg2p,sigma2";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecordError {
    #[error("expected 9 CSV fields, found {0}")]
    FieldCount(usize),
    #[error("field {field}: cannot parse {value:?}")]
    Field { field: &'static str, value: String },
    #[error("B_2 value {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("malformed JSON record: {0}")]
    Json(String),
}

/// One table row. Ingredient fields are empty (`null` in JSON) for the
/// tabulated primes 2, 3 and 5.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub p: u64,
    pub branch: Branch,
    #[serde(rename = "B2_num")]
    pub b2_num: Option<i64>,
    #[serde(rename = "B2_den")]
    pub b2_den: Option<i64>,
    pub h_p: Option<u64>,
    pub h_2p: Option<u64>,
    pub h_3p: Option<u64>,
    pub leg2p: Option<i8>,
    pub sigma2: u64,
}

impl TryFrom<&SigmaCountBreakdown> for OutputRecord {
    type Error = RecordError;

    fn try_from(b: &SigmaCountBreakdown) -> Result<Self, RecordError> {
        let ing = b.ingredients.as_ref();
        let small = |x: &num_bigint::BigInt| {
            x.to_i64()
                .ok_or_else(|| RecordError::Overflow(x.to_string()))
        };
        Ok(Self {
            p: b.p,
            branch: b.branch,
            b2_num: ing.map(|i| small(i.bernoulli.numer())).transpose()?,
            b2_den: ing.map(|i| small(i.bernoulli.denom())).transpose()?,
            h_p: ing.map(|i| i.h_p),
            h_2p: ing.map(|i| i.h_2p),
            h_3p: ing.map(|i| i.h_3p),
            leg2p: ing.map(|i| i.leg2p),
            sigma2: b.total,
        })
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

fn parse_opt<T: std::str::FromStr>(field: &'static str, s: &str) -> Result<Option<T>, RecordError> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| RecordError::Field {
        field,
        value: s.to_string(),
    })
}

impl OutputRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.p,
            self.branch,
            opt(&self.b2_num),
            opt(&self.b2_den),
            opt(&self.h_p),
            opt(&self.h_2p),
            opt(&self.h_3p),
            opt(&self.leg2p),
            self.sigma2
        )
    }

    pub fn from_csv_row(line: &str) -> Result<Self, RecordError> {
        let fields: Vec<&str> = line.trim_end().split(',').collect();
        if fields.len() != 9 {
            return Err(RecordError::FieldCount(fields.len()));
        }
        let required = |field: &'static str, s: &str| -> Result<u64, RecordError> {
            s.parse().map_err(|_| RecordError::Field {
                field,
                value: s.to_string(),
            })
        };
        Ok(Self {
            p: required("p", fields[0])?,
            branch: Branch::parse(fields[1]).ok_or_else(|| RecordError::Field {
                field: "branch",
                value: fields[1].to_string(),
            })?,
            b2_num: parse_opt("B2_num", fields[2])?,
            b2_den: parse_opt("B2_den", fields[3])?,
            h_p: parse_opt("h_p", fields[4])?,
            h_2p: parse_opt("h_2p", fields[5])?,
            h_3p: parse_opt("h_3p", fields[6])?,
            leg2p: parse_opt("leg2p", fields[7])?,
            sigma2: required("sigma2", fields[8])?,
        })
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self, RecordError> {
        serde_json::from_str(line).map_err(|e| RecordError::Json(e.to_string()))
    }
}
