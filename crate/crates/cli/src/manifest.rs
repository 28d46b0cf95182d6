//! Run manifest: records the configuration hash, every artifact written
//! by a command with its SHA-256, and stage timings.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArtifactEntry {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config_sha256: String,
    pub master_seed: u64,
    pub tool_version: String,
    pub artifacts: Vec<ArtifactEntry>,
    /// Stage name -> wall time in seconds.
    pub timings: Vec<(String, f64)>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Accumulates artifacts and timings while a command runs, then persists
/// `run_manifest.json` alongside them.
pub struct ManifestBuilder {
    out_dir: PathBuf,
    manifest: RunManifest,
    stage_started: Option<(String, Instant)>,
}

impl ManifestBuilder {
    pub fn new(command: &str, config_json: &str, master_seed: u64, out_dir: &Path) -> Self {
        Self {
            out_dir: out_dir.to_path_buf(),
            manifest: RunManifest {
                command: command.to_string(),
                config_sha256: sha256_hex(config_json.as_bytes()),
                master_seed,
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                artifacts: Vec::new(),
                timings: Vec::new(),
            },
            stage_started: None,
        }
    }

    pub fn start_stage(&mut self, name: &str) {
        self.finish_stage();
        self.stage_started = Some((name.to_string(), Instant::now()));
    }

    fn finish_stage(&mut self) {
        if let Some((name, t0)) = self.stage_started.take() {
            self.manifest.timings.push((name, t0.elapsed().as_secs_f64()));
        }
    }

    /// Writes an artifact into the output directory and records it.
    pub fn write_artifact(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
        std::fs::create_dir_all(&self.out_dir)
            .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", self.out_dir.display())))?;
        let path = self.out_dir.join(name);
        std::fs::write(&path, bytes)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
        self.manifest.artifacts.push(ArtifactEntry {
            path: name.to_string(),
            sha256: sha256_hex(bytes),
            bytes: bytes.len() as u64,
        });
        Ok(path)
    }

    /// Finalizes timings and writes `run_manifest.json`.
    pub fn finish(mut self) -> Result<RunManifest, CliError> {
        self.finish_stage();
        let text = serde_json::to_string_pretty(&self.manifest)
            .expect("manifest serializes")
            + "\n";
        let path = self.out_dir.join("run_manifest.json");
        std::fs::create_dir_all(&self.out_dir)
            .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", self.out_dir.display())))?;
        std::fs::write(&path, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
        Ok(self.manifest)
    }
}
