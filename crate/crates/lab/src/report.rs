//! Tabular and JSON renderings of a command's results.

use anyhow::Result;
use serde_json::{Map, Value};

use crate::manifest::RunManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// One command's output before rendering.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Top-level JSON object; the manifest is appended on rendering.
    pub json: Map<String, Value>,
}

impl Report {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| (*h).to_owned()).collect(),
            ..Self::default()
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format, manifest: &RunManifest) -> Result<String> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .flexible(false)
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(manifest.csv_comment().into_bytes());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Json => {
                let mut obj = self.json.clone();
                obj.insert("manifest".into(), serde_json::to_value(manifest)?);
                let mut text = serde_json::to_string_pretty(&Value::Object(obj))?;
                text.push('\n');
                Ok(text)
            }
        }
    }
}

/// Shortest round-trip decimal form.
pub fn num(v: f64) -> String {
    format!("{v}")
}
