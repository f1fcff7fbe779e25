//! Deterministic JSON reports.
//!
//! Reports must be byte-identical across runs for identical
//! `(command, inputs, seed, version)`, so serialization is hand-rolled: map
//! keys keep insertion order, floats always print with 17 significant digits
//! (`{:.16e}`), and wall-clock timing goes to stderr instead of the payload.

use std::fmt::Write as _;

/// JSON value with deterministic serialization.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    UInt(u64),
    Float(f64),
    Str(String),
    List(Vec<Value>),
    Map(Vec<(String, Value)>),
}

impl Value {
    pub fn map(entries: Vec<(&str, Value)>) -> Value {
        Value::Map(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn str(s: impl Into<String>) -> Value {
        Value::Str(s.into())
    }

    pub fn pair(p: (f64, f64)) -> Value {
        Value::List(vec![Value::Float(p.0), Value::Float(p.1)])
    }

    pub fn from_json(v: &serde_json::Value) -> Value {
        match v {
            serde_json::Value::Null => Value::Null,
            serde_json::Value::Bool(b) => Value::Bool(*b),
            serde_json::Value::Number(n) => Value::Float(n.as_f64().unwrap_or(f64::NAN)),
            serde_json::Value::String(s) => Value::Str(s.clone()),
            serde_json::Value::Array(items) => {
                Value::List(items.iter().map(Value::from_json).collect())
            }
            // serde_json's default map is sorted by key, which keeps the
            // round-trip deterministic.
            serde_json::Value::Object(map) => Value::Map(
                map.iter()
                    .map(|(k, v)| (k.clone(), Value::from_json(v)))
                    .collect(),
            ),
        }
    }

    fn write(&self, out: &mut String) {
        match self {
            Value::Null => out.push_str("null"),
            Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Value::UInt(u) => {
                let _ = write!(out, "{u}");
            }
            Value::Float(x) => {
                if x.is_finite() {
                    let _ = write!(out, "{x:.16e}");
                } else {
                    out.push_str("null");
                }
            }
            Value::Str(s) => write_json_string(out, s),
            Value::List(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            Value::Map(entries) => {
                out.push('{');
                for (i, (k, v)) in entries.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_json_string(out, k);
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<u64> for Value {
    fn from(u: u64) -> Self {
        Value::UInt(u)
    }
}

impl From<usize> for Value {
    fn from(u: usize) -> Self {
        Value::UInt(u as u64)
    }
}

fn write_json_string(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// One report per invocation: the command, its parsed inputs echoed back,
/// the results, run provenance, and wall-clock timing. Timing is kept out of
/// the canonical bytes (it would break byte-identical reruns) and goes to
/// stderr instead.
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub seed: u64,
    pub timing_ms: u128,
}

impl Report {
    pub fn timing_line(&self) -> String {
        format!("# timing_ms: {}", self.timing_ms)
    }

    pub fn to_json(&self) -> String {
        let tol = octanorm::config::Tol::from_env();
        let body = Value::map(vec![
            ("schema", Value::str("report_v1")),
            ("command", Value::str(self.command.clone())),
            ("inputs", self.inputs.clone()),
            ("results", self.results.clone()),
            (
                "provenance",
                Value::map(vec![
                    ("version", Value::str(env!("CARGO_PKG_VERSION"))),
                    ("seed", Value::UInt(self.seed)),
                    (
                        "tolerances",
                        Value::map(vec![
                            ("sphere", Value::Float(tol.sphere)),
                            ("bisect", Value::Float(tol.bisect)),
                            ("golden", Value::Float(tol.golden)),
                            ("verdict", Value::Float(tol.verdict)),
                        ]),
                    ),
                ]),
            ),
        ]);
        let mut s = body.to_json();
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_carry_17_significant_digits() {
        let v = Value::Float(std::f64::consts::SQRT_2);
        assert_eq!(v.to_json(), "1.4142135623730951e0");
        assert_eq!(Value::Float(0.5).to_json(), "5.0000000000000000e-1");
    }

    #[test]
    fn strings_are_escaped() {
        let v = Value::str("a\"b\\c\n");
        assert_eq!(v.to_json(), r#""a\"b\\c\n""#);
    }

    #[test]
    fn maps_keep_insertion_order() {
        let v = Value::map(vec![("zeta", Value::UInt(1)), ("alpha", Value::UInt(2))]);
        assert_eq!(v.to_json(), r#"{"zeta":1,"alpha":2}"#);
    }
}
