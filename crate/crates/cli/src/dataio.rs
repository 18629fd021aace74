//! Sample-file reading and data-file writing.
//!
//! Sample files hold one decimal value per line; blank lines and lines
//! starting with `#` are ignored. All numeric output is written in
//! shortest round-trip decimal form, so parsing an output file
//! reproduces the exact binary values.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};
use stable_ecf::Sample;

pub struct LoadedSample {
    pub sample: Sample,
    pub sha256: String,
}

/// Parses a sample file, reporting the 1-based line number of the first
/// offending line.
pub fn read_sample(path: &Path) -> Result<LoadedSample> {
    let raw = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(raw.clone())
        .with_context(|| format!("{} is not valid UTF-8", path.display()))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let v: f64 = trimmed
            .parse()
            .with_context(|| format!("line {}: could not parse '{}' as a number", i + 1, trimmed))?;
        if !v.is_finite() {
            bail!("line {}: non-finite value '{}'", i + 1, trimmed);
        }
        values.push(v);
    }
    if values.is_empty() {
        bail!("{} contains no data lines", path.display());
    }
    let sample = Sample::new(values).context("validating sample")?;
    Ok(LoadedSample { sample, sha256: hex_digest(&raw) })
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes text to `path`, or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes()).context("writing to stdout")
        }
    }
}

/// One value per line in round-trip decimal form.
pub fn render_sample(sample: &Sample) -> String {
    let mut out = String::new();
    for v in sample.values() {
        out.push_str(&format!("{v}\n"));
    }
    out
}

/// Tab-separated rows with a header line.
pub fn render_tsv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}
