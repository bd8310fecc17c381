//! Uniform CLI report envelope with deterministic JSON rendering.

use serde::Serialize;
use serde_json::Value;

/// One command's outcome: echoed inputs, a structured payload, a single
/// pass flag (the conjunction of every boolean check in the payload), and
/// the citations backing the result.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub pass: bool,
    pub citations: Vec<String>,
}

impl Report {
    pub fn new(
        command: &str,
        inputs: Value,
        results: Value,
        pass: bool,
        citations: Vec<String>,
    ) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results,
            pass,
            citations,
        }
    }

    /// Deterministic JSON: serde_json maps iterate in sorted key order, so a
    /// plain pretty-print is byte-stable for identical inputs.
    pub fn to_json_string(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("report renders")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "command: {}\npass: {}\nresults: {}\n",
            self.command,
            self.pass,
            serde_json::to_string_pretty(&self.results).expect("results render"),
        );
        if !self.citations.is_empty() {
            out.push_str("citations:\n");
            for c in &self.citations {
                out.push_str(&format!("  - {}\n", c));
            }
        }
        out
    }
}
