//! CSV tables and run manifests.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{CliError, Experiment, RunConfig};

/// A rectangular table of already formatted cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

/// Sidecar written next to every CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub timestamp: String,
    pub seed: u64,
    pub drops: usize,
    /// SHA-256 of the canonical JSON form of `config`.
    pub config_digest: String,
    pub config: RunConfig,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
        let m: RunManifest =
            serde_json::from_str(&text).map_err(|e| CliError::config("manifest", e.to_string()))?;
        if m.config.digest() != m.config_digest {
            return Err(CliError::config("manifest.config_digest", "digest does not match the embedded config"));
        }
        m.config.validate()?;
        Ok(m)
    }
}

pub fn csv_path(out: &Path, experiment: Experiment) -> PathBuf {
    out.join(format!("{}.csv", experiment.name()))
}

pub fn manifest_path(out: &Path, experiment: Experiment) -> PathBuf {
    out.join(format!("{}.manifest.json", experiment.name()))
}

pub fn write_outputs(out: &Path, experiment: Experiment, cfg: &RunConfig, table: &Table) -> Result<(), CliError> {
    std::fs::create_dir_all(out).map_err(|e| CliError::io(format!("creating {}", out.display()), e))?;
    let csv = csv_path(out, experiment);
    std::fs::write(&csv, table.to_csv()).map_err(|e| CliError::io(format!("writing {}", csv.display()), e))?;
    let manifest = RunManifest {
        command: experiment.name().to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        seed: cfg.scenario.seed,
        drops: cfg.scenario.drops,
        config_digest: cfg.digest(),
        config: cfg.clone(),
        outputs: vec![csv.clone()],
    };
    let path = manifest_path(out, experiment);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(&path, json + "\n").map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
    log::info!("wrote {} and {}", csv.display(), path.display());
    Ok(())
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    format!("{x}")
}
