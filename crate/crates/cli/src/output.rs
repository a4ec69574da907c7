//! The versioned JSON document and its CSV view.

use hypercolor::Warning;
use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Timing {
    /// Seconds since the Unix epoch at start.
    pub timestamp: u64,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Serialize)]
pub struct Document {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub inputs: Value,
    pub outputs: Value,
    pub warnings: Vec<Warning>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

/// What a command hands back before timing is attached.
pub struct Report {
    pub inputs: Value,
    pub outputs: Value,
    pub warnings: Vec<Warning>,
}

impl Report {
    pub fn new(inputs: Value, outputs: Value, warnings: Vec<Warning>) -> Self {
        let mut dedup: Vec<Warning> = Vec::with_capacity(warnings.len());
        for w in warnings {
            if !dedup.contains(&w) {
                dedup.push(w);
            }
        }
        Report { inputs, outputs, warnings: dedup }
    }
}

pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn csv_field(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(_) | Value::Bool(_) => v.to_string(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(m) => {
            for (key, val) in m {
                let path = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                flatten_into(&path, val, out);
            }
        }
        _ => out.push((prefix.to_string(), v.clone())),
    }
}

/// A `table` array of objects in the outputs becomes a header plus rows;
/// otherwise the outputs are flattened to `key,value` lines.
pub fn to_csv(outputs: &Value) -> String {
    let mut s = String::new();
    if let Some(Value::Array(rows)) = outputs.get("table") {
        let header: Vec<String> = match rows.first() {
            Some(Value::Object(m)) => m.keys().cloned().collect(),
            _ => Vec::new(),
        };
        s.push_str(&header.join(","));
        s.push('\n');
        for row in rows {
            let empty = Map::new();
            let m = row.as_object().unwrap_or(&empty);
            let line: Vec<String> = header.iter().map(|h| csv_field(m.get(h).unwrap_or(&Value::Null))).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        return s;
    }
    let mut pairs = Vec::new();
    flatten_into("", outputs, &mut pairs);
    s.push_str("key,value\n");
    for (k, v) in pairs {
        s.push_str(&format!("{},{}\n", csv_field(&Value::String(k)), csv_field(&v)));
    }
    s
}
