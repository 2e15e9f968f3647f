//! Run records and atomic file output.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Writes `bytes` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let tmp = path.with_file_name(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let res = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if res.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    res
}

/// SHA-256 of the compact JSON serialization. Object keys are sorted, so
/// the digest does not depend on key order in the source document.
pub fn digest(config: &Value) -> String {
    let canonical = serde_json::to_string(config).expect("json values serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn unix_now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

#[derive(Debug, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub config_digest: String,
    pub config: Value,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub version: &'static str,
    pub seed: u64,
    pub outputs: Vec<PathBuf>,
    pub status: String,
}

impl RunRecord {
    pub fn new(command: &str, config: Value, seed: u64, started_unix: f64) -> Self {
        RunRecord {
            command: command.to_string(),
            config_digest: digest(&config),
            config,
            started_unix,
            finished_unix: started_unix,
            version: env!("CARGO_PKG_VERSION"),
            seed,
            outputs: Vec::new(),
            status: String::new(),
        }
    }

    /// Stamps the finish time and writes the record next to the outputs.
    pub fn finish(mut self, path: &Path, status: &str) -> io::Result<()> {
        self.finished_unix = unix_now();
        self.status = status.to_string();
        let mut text = serde_json::to_string_pretty(&self).expect("record serializes");
        text.push('\n');
        write_atomic(path, text.as_bytes())
    }
}
