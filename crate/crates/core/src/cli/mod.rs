//! Command-line front end.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub use config::RunConfig;
pub use output::RunManifest;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error at `{key}`: {msg}")]
    Config { key: String, msg: String },
    #[error("numerical failure: {0}")]
    Numerical(#[from] crate::Error),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
}

impl CliError {
    pub fn config(key: &str, msg: impl Into<String>) -> Self {
        CliError::Config { key: key.to_string(), msg: msg.into() }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "holomimo", version, about = "Multi-user MIMO with coupled dipole arrays")]
pub struct Cli {
    /// Seed for the drop generator (overrides scenario.seed).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of Monte Carlo drops (overrides scenario.drops).
    #[arg(long, global = true)]
    pub drops: Option<usize>,
    /// Output directory for CSV files and manifests.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// TOML configuration file; all keys are optional.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Experiment {
    /// Uplink SE versus spacing for a fixed number of elements.
    SweepSpacing,
    /// Uplink SE and channel gain versus spacing for fixed apertures.
    SweepAperture,
    /// Two-element closed forms next to the circuit pipeline.
    TwoElement,
    /// Uplink, downlink and naive-precoding downlink SE.
    Duality,
    /// Normalized eigenvalues of Re{Z_AR} and of the noise correlation.
    EigenSpectrum,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::SweepSpacing => "sweep-spacing",
            Experiment::SweepAperture => "sweep-aperture",
            Experiment::TwoElement => "two-element",
            Experiment::Duality => "duality",
            Experiment::EigenSpectrum => "eigen-spectrum",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            Experiment::SweepSpacing,
            Experiment::SweepAperture,
            Experiment::TwoElement,
            Experiment::Duality,
            Experiment::EigenSpectrum,
        ]
        .into_iter()
        .find(|e| e.name() == name)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    #[command(flatten)]
    Run(Experiment),
    /// Re-run the command recorded in a manifest.
    Replay { manifest: PathBuf },
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        None => RunConfig::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
            RunConfig::from_toml(&text)?
        }
    };
    if let Some(seed) = cli.seed {
        cfg.scenario.seed = seed;
    }
    if let Some(drops) = cli.drops {
        cfg.scenario.drops = drops;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let (experiment, cfg) = match &cli.command {
        Command::Run(e) => (*e, load_config(&cli)?),
        Command::Replay { manifest } => {
            let m = RunManifest::read(manifest)?;
            let e = Experiment::from_name(&m.command)
                .ok_or_else(|| CliError::config("manifest.command", format!("unknown command `{}`", m.command)))?;
            (e, m.config)
        }
    };
    let table = commands::execute(experiment, &cfg)?;
    output::write_outputs(&cli.out, experiment, &cfg, &table)?;
    Ok(())
}

pub fn main_entry() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
