use std::fmt::Write as _;

use serde_json::{Map, Value};

/// Ordered `key=value` lines followed by the same data as one JSON object.
/// Nothing time-dependent goes in here, so equal inputs give equal reports.
#[derive(Default)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.to_string(), value.into()));
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(";"),
                other => other.to_string(),
            };
            writeln!(out, "{k}={text}").unwrap();
        }
        let map: Map<String, Value> = self.entries.iter().cloned().collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(map)).unwrap()).unwrap();
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
