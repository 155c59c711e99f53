use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// One JSON object per invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub diagnostics: Value,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Value, result: Value, diagnostics: Value) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            inputs,
            result,
            diagnostics,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("records contain only finite numbers");
        s.push('\n');
        s
    }
}
