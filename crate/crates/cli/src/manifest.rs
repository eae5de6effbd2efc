//! Output documents: a run manifest followed by the payload.
//!
//! JSON: `{"manifest": {...}, "payload": {...}}`.
//! CSV: one `# manifest <json>` line, then the table.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::{Command, Format};
use crate::commands::Payload;
use crate::CliError;

pub const CSV_PREFIX: &str = "# manifest ";

/// Everything needed to reproduce a payload.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub samples: Option<u64>,
    pub format: Format,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: RunConfig,
    pub seed: u64,
    pub tool_version: String,
    /// Not part of the reproducible payload.
    pub wall_time_ms: u64,
}

impl RunManifest {
    pub fn new(config: RunConfig, seed: u64, wall_time_ms: u64) -> Self {
        Self {
            command: config.command.name(),
            config,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms,
        }
    }
}

/// Payload text exactly as written after the manifest.
pub fn payload_text(payload: &Payload, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string(&payload.json).expect("JSON values serialize")),
        Format::Csv => payload
            .csv
            .clone()
            .ok_or_else(|| CliError::Usage("this command has no CSV form; use --format json".into())),
    }
}

pub fn render(manifest: &RunManifest, payload_text: &str) -> String {
    let m = serde_json::to_string(manifest).expect("manifest serializes");
    match manifest.config.format {
        Format::Json => format!("{{\"manifest\":{m},\n\"payload\":{payload_text}}}\n"),
        Format::Csv => format!("{CSV_PREFIX}{m}\n{payload_text}"),
    }
}

/// Splits a written document into its manifest and payload text.
pub fn parse(doc: &str) -> Result<(RunManifest, String), CliError> {
    let bad = |e: String| CliError::Usage(format!("not a switchlab output file: {e}"));
    if let Some(rest) = doc.strip_prefix(CSV_PREFIX) {
        let (line, body) = rest.split_once('\n').ok_or_else(|| bad("missing table".into()))?;
        let manifest: RunManifest = serde_json::from_str(line).map_err(|e| bad(e.to_string()))?;
        return Ok((manifest, body.to_string()));
    }
    let (head, body) = doc.split_once("\n\"payload\":").ok_or_else(|| bad("missing payload".into()))?;
    let head = head.strip_prefix("{\"manifest\":").ok_or_else(|| bad("missing manifest".into()))?;
    let manifest: RunManifest = serde_json::from_str(head.trim_end_matches(',')).map_err(|e| bad(e.to_string()))?;
    let body = body.strip_suffix("}\n").ok_or_else(|| bad("truncated document".into()))?;
    // the whole file must still be one valid JSON document
    serde_json::from_str::<Value>(doc).map_err(|e| bad(e.to_string()))?;
    Ok((manifest, body.to_string()))
}
