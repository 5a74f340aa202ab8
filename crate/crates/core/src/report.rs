//! Serialization helpers shared by every report.
//!
//! Floats are written with 17 significant digits and non-finite values as the
//! strings `"inf"`, `"-inf"` or `"nan"`. Big integers and rationals are
//! written as decimal strings. Together with fixed field order this makes
//! report bytes a pure function of the inputs.

use std::fs;
use std::path::Path;

use num::bigint::BigUint;
use num::BigRational;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::{Error, LogMagnitude, Result};

pub fn format_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub fn sig17<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        let raw = RawValue::from_string(format_f64(*x)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    } else {
        s.serialize_str(&format_f64(*x))
    }
}

pub fn sig17_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => sig17(v, s),
        None => s.serialize_none(),
    }
}

pub fn decimal<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

pub fn decimal_list<S: Serializer>(xs: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_str_radix(10)))
}

pub fn rational<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize");
    out.push('\n');
    out
}

/// Writes via a sibling temporary file and a rename, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

/// One evaluated inequality `lhs REL rhs`, compared on the natural-log scale.
///
/// `margin_log` is oriented so that a positive margin means the inequality
/// holds with room to spare.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub step: String,
    pub relation: Relation,
    #[serde(serialize_with = "sig17")]
    pub lhs_log: f64,
    #[serde(serialize_with = "sig17")]
    pub rhs_log: f64,
    pub pass: bool,
    #[serde(serialize_with = "sig17")]
    pub margin_log: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(step: impl Into<String>, lhs: LogMagnitude, relation: Relation, rhs: LogMagnitude) -> Self {
        let (small, big) = match relation {
            Relation::Le | Relation::Lt => (lhs, rhs),
            Relation::Ge | Relation::Gt => (rhs, lhs),
        };
        let margin_log = match (small.is_zero(), big.is_zero()) {
            (true, true) => 0.0,
            (true, false) => f64::INFINITY,
            _ => big.ln() - small.ln(),
        };
        let pass = match relation {
            Relation::Le | Relation::Ge => margin_log >= 0.0,
            Relation::Lt | Relation::Gt => margin_log > 0.0,
        };
        Check {
            step: step.into(),
            relation,
            lhs_log: lhs.ln(),
            rhs_log: rhs.ln(),
            pass,
            margin_log,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Collapses per-index instances of one inequality into the instance with
    /// the smallest margin.
    pub fn worst(step: impl Into<String>, instances: impl IntoIterator<Item = Check>) -> Check {
        let step = step.into();
        let mut worst = instances
            .into_iter()
            .min_by(|a, b| a.margin_log.total_cmp(&b.margin_log))
            .expect("at least one instance");
        worst.step = step;
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        #[serde(serialize_with = "sig17")]
        x: f64,
        #[serde(serialize_with = "sig17")]
        y: f64,
    }

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(format_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(format_f64(1234.5), "1.2345000000000000e3");
        let json = serde_json::to_string(&Sample { x: 2.0, y: f64::NEG_INFINITY }).unwrap();
        assert_eq!(json, r#"{"x":2.0000000000000000e0,"y":"-inf"}"#);
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["x"].as_f64(), Some(2.0));
    }

    #[test]
    fn check_margins() {
        let two = LogMagnitude::from_value(2.0);
        let three = LogMagnitude::from_value(3.0);
        let c = Check::new("a", two, Relation::Le, three);
        assert!(c.pass && c.margin_log > 0.0);
        let c = Check::new("b", two, Relation::Ge, three);
        assert!(!c.pass && c.margin_log < 0.0);
        assert!(!Check::new("c", two, Relation::Lt, two).pass);
        assert!(Check::new("d", two, Relation::Le, two).pass);
        assert!(Check::new("e", LogMagnitude::ZERO, Relation::Le, two).pass);
        let w = Check::worst("w", [Check::new("x", two, Relation::Le, three), Check::new("y", three, Relation::Le, three)]);
        assert_eq!((w.step.as_str(), w.margin_log), ("w", 0.0));
    }
}
