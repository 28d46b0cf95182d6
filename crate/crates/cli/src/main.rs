//! `qembed`: command-line workbench for the single-qubit embedding
//! experiments.
//!
//! Exit codes: 0 on success, 2 on validation errors (bad config, bad
//! arguments, domain errors), 1 on runtime errors (I/O, numerical
//! failures).

mod commands;
mod config;
mod manifest;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use config::ExperimentConfig;
use manifest::ManifestBuilder;

#[derive(Debug)]
pub enum CliError {
    /// Rejected input: exit code 2.
    Validation(String),
    /// Failure while executing: exit code 1.
    Runtime(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "validation error: {msg}"),
            CliError::Runtime(msg) => write!(f, "runtime error: {msg}"),
        }
    }
}

impl From<qembed_core::Error> for CliError {
    fn from(e: qembed_core::Error) -> Self {
        match e {
            qembed_core::Error::InvalidArgument(_) | qembed_core::Error::Domain(_) => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GramMode {
    Exact,
    Shots,
    Atomic,
    Photonic,
}

impl GramMode {
    pub fn tag(self) -> &'static str {
        match self {
            GramMode::Exact => "exact",
            GramMode::Shots => "shots",
            GramMode::Atomic => "atomic",
            GramMode::Photonic => "photonic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlatformArg {
    Atomic,
    Photonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetSource {
    /// The ten validation states of a training run under this config.
    Trained,
    /// The ten published benchmark states.
    Reference,
}

#[derive(Parser)]
#[command(name = "qembed", version, about = "Single-qubit embedding workbench")]
struct Cli {
    /// Experiment configuration file (JSON). Flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed; required here or in the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for artifacts (default: ./out).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw the training and validation datasets and write them as CSV.
    Dataset,
    /// Train the feature map; writes trace, parameters, and cost curve.
    Train,
    /// Build a Gram matrix (CSV + PGM heatmap + cluster metrics).
    Gram {
        #[arg(long, value_enum)]
        mode: GramMode,
    },
    /// Compile states to pulse sequences or waveplate settings.
    Compile {
        #[arg(long, value_enum)]
        backend: PlatformArg,
        #[arg(long, value_enum, default_value = "trained")]
        source: TargetSource,
    },
    /// Simulate noisy tomography of the benchmark states.
    Simulate {
        #[arg(long, value_enum)]
        platform: PlatformArg,
    },
    /// Capacity bounds: maximal point count at a fidelity, or maximal
    /// sector angle for a class count.
    Capacity {
        #[arg(long, conflicts_with = "classes")]
        fidelity: Option<f64>,
        #[arg(long)]
        classes: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file_config = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    let resolved = file_config.resolve(cli.seed, cli.out.clone())?;
    let config_json =
        serde_json::to_string_pretty(&resolved.config).expect("config serializes");

    let command_name = match &cli.command {
        Command::Dataset => "dataset".to_string(),
        Command::Train => "train".to_string(),
        Command::Gram { mode } => format!("gram --mode {}", mode.tag()),
        Command::Compile { backend, .. } => format!("compile --backend {backend:?}"),
        Command::Simulate { platform } => format!("simulate --platform {platform:?}"),
        Command::Capacity { .. } => "capacity".to_string(),
    };
    let mut manifest = ManifestBuilder::new(
        &command_name,
        &config_json,
        resolved.master_seed,
        &resolved.out_dir,
    );
    manifest.write_artifact("config.json", (config_json.clone() + "\n").as_bytes())?;

    match cli.command {
        Command::Dataset => commands::cmd_dataset(&resolved, &mut manifest)?,
        Command::Train => commands::cmd_train(&resolved, &mut manifest)?,
        Command::Gram { mode } => commands::cmd_gram(&resolved, mode, &mut manifest)?,
        Command::Compile { backend, source } => {
            commands::cmd_compile(&resolved, backend, source, &mut manifest)?
        }
        Command::Simulate { platform } => {
            commands::cmd_simulate(&resolved, platform, &mut manifest)?
        }
        Command::Capacity { fidelity, classes } => {
            commands::cmd_capacity(fidelity, classes, &mut manifest)?
        }
    }
    manifest.finish()?;
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
