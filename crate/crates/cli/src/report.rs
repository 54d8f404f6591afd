use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context as _;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Summary written next to every analysis result. Apart from `timing_ms` the
/// body depends only on the input and the flags.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    /// `sha256:<hex>` of the spec file bytes, or of the profile description.
    pub input_digest: String,
    pub outputs: Value,
    pub sequences_examined: Option<u64>,
    pub timing_ms: f64,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Writes `contents` to `dir/name`, creating `dir` if needed.
pub fn write_output(dir: &Path, name: &str, contents: &str) -> anyhow::Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

impl RunReport {
    pub fn write(&self, dir: &Path) -> anyhow::Result<PathBuf> {
        let mut body = serde_json::to_string_pretty(self)?;
        body.push('\n');
        write_output(dir, &format!("{}.report.json", self.command), &body)
    }
}
