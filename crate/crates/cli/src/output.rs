//! Output files: every file opens with scenario, seed and parameter hash.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use stochwave_core::export::Header;

use crate::config::ExperimentConfig;
use crate::CliError;

/// SHA-256 of the canonical JSON of the configuration, seed excluded so the
/// hash names the physics and the seed is recorded alongside it.
pub fn param_hash(config: &ExperimentConfig) -> String {
    let mut c = config.clone();
    c.seed = 0;
    c.out_dir = None;
    let json = serde_json::to_string(&c).expect("config serializes");
    Sha256::digest(json.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn header(config: &ExperimentConfig, command: &str) -> Header {
    Header::new()
        .with("scenario", &config.scenario)
        .with("command", command)
        .with("seed", config.seed)
        .with("param_hash", param_hash(config))
        .with("version", env!("CARGO_PKG_VERSION"))
}

/// Creates `dir/name` and hands a buffered writer to `body`.
pub fn write_file(
    dir: &Path,
    name: &str,
    body: impl FnOnce(&mut BufWriter<File>) -> Result<(), CliError>,
) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    let mut w = BufWriter::new(File::create(&path)?);
    body(&mut w)?;
    w.flush()?;
    Ok(path)
}
