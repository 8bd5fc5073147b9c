//! Report assembly and serialization.
//!
//! Every command emits one top-level record.  Key order is fixed by the
//! struct, nested maps are sorted, and rationals are rendered as "p/q",
//! so reruns are byte-identical apart from timing_ms.

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub input_digest: String,
    pub command: &'static str,
    pub params: Value,
    pub results: Value,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &'static str, input_digest: String, params: Value, results: Value) -> Self {
        Report {
            tool: "hyperspectra",
            version: env!("CARGO_PKG_VERSION"),
            input_digest,
            command,
            params,
            results,
            timing_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// Flattens the same tree into `path,value` rows.  Leaf values keep
    /// their JSON encoding so both formats carry identical data.
    pub fn to_csv(&self) -> String {
        let tree = serde_json::to_value(self).expect("report serialization");
        let mut rows = String::from("path,value\n");
        flatten("", &tree, &mut rows);
        rows
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let sub = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(&sub, val, out);
            }
            if map.is_empty() {
                let _ = writeln!(out, "{},{}", csv_escape(path), csv_escape("{}"));
            }
        }
        Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), val, out);
            }
            if items.is_empty() {
                let _ = writeln!(out, "{},{}", csv_escape(path), csv_escape("[]"));
            }
        }
        leaf => {
            let encoded = serde_json::to_string(leaf).expect("leaf serialization");
            let _ = writeln!(out, "{},{}", csv_escape(path), csv_escape(&encoded));
        }
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn digest_of(canonical: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let out = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in out {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

/// "p/q" with an explicit denominator even when it is 1, so exact values
/// are never confused with floats.
pub fn rat_str(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn uint_str(x: &BigUint) -> String {
    x.to_string()
}
