//! The report document and its text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "semifiber-report/1";

/// Flags given on the command line. They supply defaults for tasks that
/// omit the corresponding key.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Options {
    pub hdeg: Option<u32>,
    pub tdeg: Option<u32>,
    pub bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskReport {
    pub procedure: String,
    /// Every parameter the procedure used, including defaults.
    pub inputs: BTreeMap<String, String>,
    pub verdict: String,
    pub certificate: Value,
    pub certified_bounds: Value,
    pub result: Value,
    /// Lines for the text rendering.
    #[serde(skip)]
    pub summary: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: String,
    pub tool_version: String,
    pub input_hash: String,
    pub field: String,
    pub options: Options,
    pub tasks: Vec<TaskReport>,
}

pub fn input_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    let mut out = String::from("sha256:");
    for b in digest {
        write!(out, "{b:02x}").unwrap();
    }
    out
}

impl ReportDocument {
    pub fn new(text: &str, field: String, options: Options, tasks: Vec<TaskReport>) -> Self {
        ReportDocument {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_hash: input_hash(text),
            field,
            options,
            tasks,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {} over {}", self.schema, self.input_hash, self.field).unwrap();
        for (i, t) in self.tasks.iter().enumerate() {
            let inputs: Vec<String> = t.inputs.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            writeln!(out, "\n[{}] {} ({})", i + 1, t.procedure, inputs.join("; ")).unwrap();
            writeln!(out, "verdict: {}", t.verdict).unwrap();
            for line in &t.summary {
                writeln!(out, "  {line}").unwrap();
            }
        }
        out
    }
}
