//! Run manifests: a JSON record of the fully resolved configuration of
//! every invocation, written alongside file outputs (or to stderr when
//! output goes to stdout). Re-running the recorded `argv` reproduces the
//! data outputs byte for byte.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// Master seed, for subcommands that draw randomness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Fully resolved settings, flag name to value.
    pub resolved: serde_json::Map<String, serde_json::Value>,
    /// Canonical argument vector; `stable-ecf <argv...>` reproduces the
    /// outputs bit-exactly.
    pub argv: Vec<String>,
    /// Paths written by the run.
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, seed: Option<u64>) -> Self {
        Self {
            tool: "stable-ecf".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            seed,
            resolved: serde_json::Map::new(),
            argv: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn record(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.resolved.insert(key.to_string(), value.into());
    }

    /// Writes `<data_path>.manifest.json` next to a data output, or the
    /// manifest JSON to stderr when the data went to stdout.
    pub fn emit(&self, data_path: Option<&Path>) -> Result<()> {
        let json = serde_json::to_string_pretty(self).context("serializing manifest")?;
        match data_path {
            Some(p) => {
                let mpath = manifest_path(p);
                std::fs::write(&mpath, json + "\n")
                    .with_context(|| format!("writing manifest {}", mpath.display()))?;
            }
            None => eprintln!("{json}"),
        }
        Ok(())
    }
}

pub fn manifest_path(data_path: &Path) -> std::path::PathBuf {
    let mut name = data_path.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    data_path.with_file_name(name)
}
