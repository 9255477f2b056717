use std::path::Path;

use serde::Serialize;

use crate::checksum::fnv1a;

/// Structured result document emitted with `--json`: algorithm name, seed,
/// wall time and a checksum of the canonical output text, for regression
/// diffing.
#[derive(Serialize)]
pub struct RunReport {
    pub algorithm: String,
    pub seed: u64,
    pub wall_ms: f64,
    pub checksum: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<serde_json::Value>,
}

impl RunReport {
    pub fn new(algorithm: impl Into<String>, seed: u64, wall_ms: f64, output: &str) -> RunReport {
        RunReport {
            algorithm: algorithm.into(),
            seed,
            wall_ms,
            checksum: fnv1a(output),
            extra: None,
        }
    }

    pub fn print(&self) -> anyhow::Result<()> {
        println!("{}", serde_json::to_string(self)?);
        Ok(())
    }
}

/// Writes text to `--out` when given, otherwise to stdout (suppressed when a
/// JSON report is requested, which still records the checksum).
pub fn emit(out: Option<&Path>, json: bool, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None if !json => print!("{text}"),
        None => {}
    }
    Ok(())
}
