//! JSON and CSV encodings of case lists.
//!
//! Numbers are written with 17 significant digits; non-finite values become the
//! strings `inf`, `-inf` and `nan`.

use std::io::Write;

use super::InequalityCase;
use crate::error::{Error, Result};

/// 17 significant digits, or a token for non-finite values.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub fn parse_number(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        "nan" => Some(f64::NAN),
        t => t.parse().ok(),
    }
}

/// Serde adapter for report numbers.
pub mod num {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::value::RawValue;

    pub fn serialize<S: Serializer>(x: &f64, ser: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            let raw = RawValue::from_string(super::format_number(*x)).map_err(serde::ser::Error::custom)?;
            raw.serialize(ser)
        } else {
            ser.serialize_str(&super::format_number(*x))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(x) => Ok(x),
            Raw::Text(s) => super::parse_number(&s).ok_or_else(|| D::Error::custom(format!("bad number `{s}`"))),
        }
    }
}

pub fn to_json(cases: &[InequalityCase]) -> Result<String> {
    serde_json::to_string_pretty(cases).map_err(|e| Error::Spec(e.to_string()))
}

pub fn from_json(text: &str) -> Result<Vec<InequalityCase>> {
    serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
}

pub const CSV_HEADER: [&str; 7] = ["id", "lhs", "rhs", "constant", "margin", "status", "context"];

pub fn write_csv<W: Write>(cases: &[InequalityCase], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Spec(format!("csv: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for c in cases {
        w.write_record([
            c.id.as_str(),
            &format_number(c.lhs),
            &format_number(c.rhs),
            &format_number(c.constant),
            &format_number(c.margin),
            c.status.name(),
            c.context.as_str(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Spec(format!("csv: {e}")))
}

pub fn to_csv(cases: &[InequalityCase]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(cases, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Spec(e.to_string()))
}
