use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use sigma3::koszul::D_WINDOW;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Schur,
    Character,
    Addition,
    PoleOrders,
    Weights,
    LeadingTerms,
    Basis,
    Koszul,
    Matrix,
    Localform,
    All,
}

impl Suite {
    pub const EVERY: [Suite; 10] = [
        Suite::Schur,
        Suite::Character,
        Suite::Addition,
        Suite::PoleOrders,
        Suite::Weights,
        Suite::LeadingTerms,
        Suite::Basis,
        Suite::Koszul,
        Suite::Matrix,
        Suite::Localform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Schur => "schur",
            Suite::Character => "character",
            Suite::Addition => "addition",
            Suite::PoleOrders => "pole-orders",
            Suite::Weights => "weights",
            Suite::LeadingTerms => "leading-terms",
            Suite::Basis => "basis",
            Suite::Koszul => "koszul",
            Suite::Matrix => "matrix",
            Suite::Localform => "localform",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Markdown,
}

/// Command-line flags; every flag can also be set through the environment.
#[derive(Debug, Clone, Parser)]
#[command(name = "sigma3-verify", version, about = "Exact verification of the degenerate genus-3 sigma ring")]
pub struct Cli {
    /// Suites to run (comma separated).
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all", env = "SIGMA3_SUITE")]
    pub suite: Vec<Suite>,
    /// Truncation order of the q-series.
    #[arg(long, default_value_t = 64, env = "SIGMA3_NQ")]
    pub nq: usize,
    /// Highest KP degree for the basis rank checks; also bounds the surjectivity window.
    #[arg(long, default_value_t = 12, env = "SIGMA3_NRANK")]
    pub nrank: u32,
    /// Degrees |n| ≤ this are checked in the Koszul complex.
    #[arg(long, default_value_t = 20, env = "SIGMA3_KOSZUL_WINDOW")]
    pub koszul_window: i64,
    /// Truncation order of the normal-form series.
    #[arg(long, default_value_t = 12, env = "SIGMA3_LOCALFORM_ORDER")]
    pub localform_order: u32,
    /// Worker threads (default: available parallelism).
    #[arg(long, env = "SIGMA3_JOBS")]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "text", env = "SIGMA3_FORMAT")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, env = "SIGMA3_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub nq: usize,
    pub nrank: u32,
    pub koszul_window: i64,
    pub localform_order: u32,
    pub jobs: usize,
    pub format: Format,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("--nq must be at least 1")]
    ZeroNq,
    #[error("--koszul-window must lie in 0..={D_WINDOW}, got {0}")]
    KoszulWindow(i64),
    #[error("--localform-order must be at least 2, got {0}")]
    LocalformOrder(u32),
    #[error("--jobs must be at least 1")]
    ZeroJobs,
    #[error("no suite selected")]
    NoSuite,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suites: Suite::EVERY.to_vec(),
            nq: 64,
            nrank: 12,
            koszul_window: 20,
            localform_order: 12,
            jobs: default_jobs(),
            format: Format::Text,
        }
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.suites.is_empty() {
            return Err(ConfigError::NoSuite);
        }
        if self.nq == 0 {
            return Err(ConfigError::ZeroNq);
        }
        if !(0..=D_WINDOW).contains(&self.koszul_window) {
            return Err(ConfigError::KoszulWindow(self.koszul_window));
        }
        if self.localform_order < 2 {
            return Err(ConfigError::LocalformOrder(self.localform_order));
        }
        if self.jobs == 0 {
            return Err(ConfigError::ZeroJobs);
        }
        Ok(())
    }

    /// Only `suites` in canonical order, `all` expanded, duplicates dropped.
    pub fn with_suites(mut self, suites: &[Suite]) -> Self {
        self.suites = expand(suites);
        self
    }
}

fn expand(suites: &[Suite]) -> Vec<Suite> {
    if suites.contains(&Suite::All) {
        return Suite::EVERY.to_vec();
    }
    Suite::EVERY.into_iter().filter(|s| suites.contains(s)).collect()
}

impl TryFrom<Cli> for RunConfig {
    type Error = ConfigError;

    fn try_from(cli: Cli) -> Result<Self, ConfigError> {
        let cfg = RunConfig {
            suites: expand(&cli.suite),
            nq: cli.nq,
            nrank: cli.nrank,
            koszul_window: cli.koszul_window,
            localform_order: cli.localform_order,
            jobs: cli.jobs.unwrap_or_else(default_jobs),
            format: cli.format,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
