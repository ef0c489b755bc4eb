//! Report envelope shared by every subcommand: schema version, tool
//! version, the full run configuration, and exactly one timestamp key
//! (`created_unix_ms`), so reruns are byte-identical everywhere else.

use anyhow::{Context, Result};
use serde::Serialize;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub argv: Vec<String>,
    pub threads: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
}

pub struct Artifact {
    pub summary: String,
    pub result: serde_json::Value,
}

/// Writes the enveloped artifact to `out` (summary to stdout), or prints the
/// artifact to stdout (summary to stderr). Logs never mix into artifacts.
pub fn emit(artifact: Artifact, run: RunConfig, out: Option<&Path>) -> Result<()> {
    let envelope = serde_json::json!({
        "schema_version": ramsey_core::SCHEMA_VERSION,
        "tool": {
            "name": "ramsey",
            "version": env!("CARGO_PKG_VERSION"),
        },
        "created_unix_ms": SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0),
        "run": serde_json::to_value(&run)?,
        "result": artifact.result,
    });
    let text = serde_json::to_string_pretty(&envelope)?;
    match out {
        Some(path) => {
            std::fs::write(path, text + "\n")
                .with_context(|| format!("writing artifact to {}", path.display()))?;
            println!("{}", artifact.summary);
            println!("artifact: {}", path.display());
        }
        None => {
            eprintln!("{}", artifact.summary);
            println!("{text}");
        }
    }
    Ok(())
}
