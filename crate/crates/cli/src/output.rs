use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Ok,
    Undecided,
    Mismatch,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Mismatch => 1,
            Outcome::Undecided => 3,
        }
    }
}

/// What a subcommand produced: the rendered text and how it went.
pub struct Report {
    pub text: String,
    pub outcome: Outcome,
}

impl Report {
    pub fn ok(text: String) -> Report {
        Report {
            text,
            outcome: Outcome::Ok,
        }
    }
}

/// Bad arguments that clap cannot catch; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Compact JSON with sorted keys.
pub fn canonical<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("serializable");
    serde_json::to_string(&v).expect("json")
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// One JSON object per row, or CSV with a header line.
pub fn render_table(format: Format, header: &[&str], rows: &[Vec<Value>]) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for row in rows {
                let obj: Map<String, Value> = header
                    .iter()
                    .zip(row)
                    .map(|(h, v)| (h.to_string(), v.clone()))
                    .collect();
                out.push_str(&canonical(&obj));
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.iter().map(csv_cell).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
        }
    }
    out
}
