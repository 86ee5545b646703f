//! Run metadata embedded in every output file.

use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};

/// Environment variable that pins the manifest timestamp.
pub const SOURCE_DATE_EPOCH: &str = "SOURCE_DATE_EPOCH";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: Map<String, Value>,
    pub seed: u64,
    pub outputs: Vec<String>,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(
        subcommand: &str,
        params: Map<String, Value>,
        seed: u64,
        output: Option<&str>,
    ) -> Result<Self> {
        Ok(Self {
            subcommand: subcommand.to_owned(),
            params,
            seed,
            outputs: vec![output.unwrap_or("stdout").to_owned()],
            version: env!("CARGO_PKG_VERSION").to_owned(),
            timestamp: timestamp()?,
        })
    }

    /// `# key=value` lines for the head of a CSV file.
    pub fn csv_comment(&self) -> String {
        let params = Value::Object(self.params.clone()).to_string();
        format!(
            "# subcommand={}\n# params={}\n# seed={}\n# outputs={}\n# version={}\n# timestamp={}\n",
            self.subcommand,
            params,
            self.seed,
            self.outputs.join(";"),
            self.version,
            self.timestamp
        )
    }
}

fn timestamp() -> Result<u64> {
    match std::env::var(SOURCE_DATE_EPOCH) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{SOURCE_DATE_EPOCH} must be an integer, got {v:?}")),
        Err(_) => Ok(SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)),
    }
}
