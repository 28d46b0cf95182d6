//! Experiment configuration: a single JSON file with defaults for every
//! field except the master seed, which must come from the file or the
//! `--seed` flag (never from the wall clock).

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use qembed_core::compile::AtomicPlatformSpec;
use qembed_core::hwsim::{AtomicNoiseModel, PhotonicNoiseModel};
use qembed_core::training::TrainConfig;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DatasetConfig {
    pub n_points: usize,
    pub bands: usize,
    pub validation_points: usize,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        Self {
            n_points: 1000,
            bands: 4,
            validation_points: 10,
        }
    }
}

/// Training hyperparameters; the seed is derived from the master seed,
/// not stored here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrainSettings {
    pub learning_rate: f64,
    pub iterations: usize,
    pub batch_size: usize,
}

impl Default for TrainSettings {
    fn default() -> Self {
        let d = TrainConfig::default();
        Self {
            learning_rate: d.learning_rate,
            iterations: d.iterations,
            batch_size: d.batch_size,
        }
    }
}

impl TrainSettings {
    pub fn to_train_config(self, seed: u64) -> TrainConfig {
        TrainConfig {
            learning_rate: self.learning_rate,
            iterations: self.iterations,
            batch_size: self.batch_size,
            seed,
            ..TrainConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub master_seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub dataset: DatasetConfig,
    pub train: TrainSettings,
    pub atomic_platform: AtomicPlatformSpec,
    pub atomic_noise: AtomicNoiseModel,
    pub photonic_noise: PhotonicNoiseModel,
    pub shots_per_overlap: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            master_seed: None,
            output_dir: None,
            dataset: DatasetConfig::default(),
            train: TrainSettings::default(),
            atomic_platform: AtomicPlatformSpec::default(),
            atomic_noise: AtomicNoiseModel::lab_reference(),
            photonic_noise: PhotonicNoiseModel::lab_reference(),
            shots_per_overlap: 2000,
        }
    }
}

impl ExperimentConfig {
    pub fn from_file(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display())))
    }

    /// Applies flag overrides (flags beat file values) and validates.
    pub fn resolve(mut self, seed_flag: Option<u64>, out_flag: Option<PathBuf>) -> Result<Resolved, CliError> {
        if let Some(seed) = seed_flag {
            self.master_seed = Some(seed);
        }
        if let Some(out) = out_flag {
            self.output_dir = Some(out);
        }
        let master_seed = self.master_seed.ok_or_else(|| {
            CliError::Validation(
                "master_seed missing: set it in the config file or pass --seed".into(),
            )
        })?;
        let out_dir = self
            .output_dir
            .clone()
            .unwrap_or_else(|| PathBuf::from("out"));
        if self.dataset.n_points < 2 {
            return Err(CliError::Validation("dataset.n_points must be >= 2".into()));
        }
        if self.dataset.bands < 2 {
            return Err(CliError::Validation("dataset.bands must be >= 2".into()));
        }
        if self.dataset.validation_points < 2 {
            return Err(CliError::Validation(
                "dataset.validation_points must be >= 2".into(),
            ));
        }
        if self.shots_per_overlap == 0 {
            return Err(CliError::Validation("shots_per_overlap must be >= 1".into()));
        }
        self.train
            .to_train_config(0)
            .validate()
            .map_err(|e| CliError::Validation(format!("train: {e}")))?;
        Ok(Resolved {
            config: self,
            master_seed,
            out_dir,
        })
    }
}

/// A validated configuration with the seed and output directory pinned.
pub struct Resolved {
    pub config: ExperimentConfig,
    pub master_seed: u64,
    pub out_dir: PathBuf,
}
