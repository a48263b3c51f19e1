//! One verified inequality (or identity) as a typed record, with stable JSON
//! and CSV renderings.
//!
//! Floats are formatted with 17 significant digits so that identical inputs
//! produce byte-identical output; 17 digits round-trip every f64 exactly.

use std::collections::BTreeMap;

/// A parameter recorded with a report.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Int(i64),
    UInt(u64),
    Float(f64),
    Text(String),
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::UInt(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::UInt(v as u64)
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Float(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_owned())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

/// 17-significant-digit float rendering; non-finite values map to JSON null.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_owned()
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

impl ParamValue {
    fn to_json(&self) -> String {
        match self {
            ParamValue::Int(v) => v.to_string(),
            ParamValue::UInt(v) => v.to_string(),
            ParamValue::Float(v) => fmt_float(*v),
            ParamValue::Text(v) => format!("\"{}\"", json_escape(v)),
        }
    }
}

/// One checked inequality: left side, right side, slack, pass flag at the
/// stated tolerance, and the generating parameters. Slack is recorded even
/// when negative.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub tolerance: f64,
    pub params: BTreeMap<String, ParamValue>,
}

impl BoundReport {
    /// An inequality check: holds iff lhs <= rhs + tolerance.
    pub fn upper_bound(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_owned(),
            lhs,
            rhs,
            slack: rhs - lhs,
            holds: lhs <= rhs + tolerance,
            tolerance,
            params: BTreeMap::new(),
        }
    }

    /// A two-sided check: holds iff |lhs - rhs| <= tolerance.
    pub fn identity(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_owned(),
            lhs,
            rhs,
            slack: rhs - lhs,
            holds: (lhs - rhs).abs() <= tolerance,
            tolerance,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    fn params_json(&self) -> String {
        let mut out = String::from("{");
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{}\":{}", json_escape(k), v.to_json()));
        }
        out.push('}');
        out
    }

    /// {"name": ..., "lhs": ..., "rhs": ..., "slack": ..., "holds": ...,
    ///  "tolerance": ..., "params": {...}} with fixed key order.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"name\":\"{}\",\"lhs\":{},\"rhs\":{},\"slack\":{},\"holds\":{},\"tolerance\":{},\"params\":{}}}",
            json_escape(&self.name),
            fmt_float(self.lhs),
            fmt_float(self.rhs),
            fmt_float(self.slack),
            self.holds,
            fmt_float(self.tolerance),
            self.params_json(),
        )
    }

    pub fn csv_header() -> &'static str {
        "name,lhs,rhs,slack,holds,tolerance,params"
    }

    /// CSV row matching `csv_header`; the params column is the JSON object,
    /// quoted with doubled inner quotes.
    pub fn to_csv_row(&self) -> String {
        let params = self.params_json().replace('"', "\"\"");
        format!(
            "{},{},{},{},{},{},\"{}\"",
            self.name,
            fmt_float(self.lhs),
            fmt_float(self.rhs),
            fmt_float(self.slack),
            self.holds,
            fmt_float(self.tolerance),
            params,
        )
    }
}
