//! Flat `key = value` benchmark configuration files.
//!
//! Keys mirror the `benchmark` flag names: `alphas`, `beta`, `n`,
//! `replications`, `methods`, `sigma`, `mu`, `seed`. Lines starting with
//! `#` and blank lines are ignored. Flags always take precedence over
//! file values.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

#[derive(Debug, Default)]
pub struct FileConfig {
    pub alphas: Option<Vec<f64>>,
    pub beta: Option<f64>,
    pub n: Option<usize>,
    pub replications: Option<usize>,
    pub methods: Option<Vec<String>>,
    pub sigma: Option<f64>,
    pub mu: Option<f64>,
    pub seed: Option<u64>,
}

pub fn parse_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let mut entries = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            bail!("config line {}: expected 'key = value', got '{}'", i + 1, trimmed);
        };
        entries.insert(key.trim().to_string(), (i + 1, value.trim().to_string()));
    }

    let mut cfg = FileConfig::default();
    for (key, (line, value)) in entries {
        match key.as_str() {
            "alphas" => {
                cfg.alphas = Some(
                    value
                        .split(',')
                        .map(|s| {
                            s.trim()
                                .parse::<f64>()
                                .with_context(|| format!("config line {line}: bad alpha '{s}'"))
                        })
                        .collect::<Result<_>>()?,
                )
            }
            "beta" => cfg.beta = Some(parse_num(&value, line, "beta")?),
            "n" => cfg.n = Some(parse_num(&value, line, "n")?),
            "replications" => cfg.replications = Some(parse_num(&value, line, "replications")?),
            "methods" => {
                cfg.methods = Some(value.split(',').map(|s| s.trim().to_string()).collect())
            }
            "sigma" => cfg.sigma = Some(parse_num(&value, line, "sigma")?),
            "mu" => cfg.mu = Some(parse_num(&value, line, "mu")?),
            "seed" => cfg.seed = Some(parse_num(&value, line, "seed")?),
            other => bail!("config line {line}: unknown key '{other}'"),
        }
    }
    Ok(cfg)
}

fn parse_num<T: std::str::FromStr>(value: &str, line: usize, key: &str) -> Result<T> {
    value
        .parse::<T>()
        .ok()
        .with_context(|| format!("config line {line}: could not parse {key} = '{value}'"))
}
