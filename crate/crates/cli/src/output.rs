use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// A finished command: one JSON document, its text rendering, and the exit code.
pub struct Outcome {
    pub doc: Option<Value>,
    pub text: String,
    pub code: u8,
    /// Printed to stderr.
    pub diagnostic: Option<String>,
}

impl Outcome {
    pub fn new(doc: impl Serialize, text: String, code: u8) -> Outcome {
        let doc = serde_json::to_value(doc).expect("output documents serialize");
        Outcome { doc: Some(doc), text, code, diagnostic: None }
    }

    pub fn ok(doc: impl Serialize, text: String) -> Outcome {
        Outcome::new(doc, text, 0)
    }

    pub fn render(&self, format: Format) -> Option<String> {
        match format {
            Format::Json => self.doc.as_ref().map(|d| serde_json::to_string_pretty(d).expect("values serialize")),
            Format::Text => (!self.text.is_empty()).then(|| self.text.trim_end().to_string()),
        }
    }
}

impl From<CliError> for Outcome {
    fn from(e: CliError) -> Outcome {
        match e {
            // Usage errors go to stderr only.
            CliError::Usage(m) => Outcome { doc: None, text: String::new(), code: 2, diagnostic: Some(m) },
            CliError::Resource(m) => {
                let doc = json!({ "error": { "kind": "resource_limit", "message": m } });
                Outcome { doc: Some(doc), text: String::new(), code: 3, diagnostic: Some(format!("resource limit reached: {m}")) }
            }
        }
    }
}
