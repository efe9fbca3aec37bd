use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Machine-readable record of one run. Field order and map ordering are
/// fixed, so identical inputs give identical bytes.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Input file name to SHA-256 of its contents.
    pub inputs: BTreeMap<String, String>,
    pub parameters: Value,
    pub results: Value,
    pub certificates: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            parameters: Value::Object(Default::default()),
            results: Value::Object(Default::default()),
            certificates: Value::Object(Default::default()),
            wall_time_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Whether any number in the value is not an integer.
pub fn contains_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(contains_float),
        Value::Object(o) => o.values().any(contains_float),
        _ => false,
    }
}
