//! Batch front end for `regclose-core`: named checks, scenario files and
//! deterministic reports.
//!
//! Every check kind resolves its arguments up front, so a scenario with a
//! bad field fails before any check runs. Exit codes: 0 when every check
//! passes (bounded passes included), 1 when any check fails, 2 on input
//! errors.

pub mod checks;
pub mod report;
pub mod scenario;

use std::path::PathBuf;

use thiserror::Error;

pub use checks::{Args, Check, CHECK_KINDS};
pub use report::{CheckResult, Report, Summary, Verdict};
pub use scenario::{load_scenario, parse_scenario, run_scenario, CheckSpec, ScenarioSpec, UniverseSpec};

/// Universe ceiling when `REGCLOSE_MAX_POINTS` is unset.
pub const DEFAULT_CEILING: usize = 4;
/// Largest ceiling `REGCLOSE_MAX_POINTS` may raise to.
pub const MAX_CEILING: usize = 6;
pub const CEILING_VAR: &str = "REGCLOSE_MAX_POINTS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] regclose_core::error::Error),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn field(path: impl std::fmt::Display, msg: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{path}: {msg}"))
    }

    /// Prefixes the offending field path, e.g. `checks[2].`.
    pub fn within(self, prefix: &str) -> Self {
        match self {
            CliError::Input(msg) => CliError::Input(format!("{prefix}{msg}")),
            CliError::Core(e) => CliError::Input(format!("{prefix}{e}")),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Where relative paths resolve and how large universes may get.
#[derive(Clone, Debug)]
pub struct Context {
    pub base: PathBuf,
    pub ceiling: usize,
    pub max_points: usize,
    pub timings: bool,
}

impl Context {
    pub fn new(base: impl Into<PathBuf>, ceiling: usize) -> Self {
        Context { base: base.into(), ceiling, max_points: ceiling.min(DEFAULT_CEILING), timings: false }
    }
}

/// Parses the value of `REGCLOSE_MAX_POINTS`.
pub fn parse_ceiling(value: Option<&str>) -> Result<usize> {
    let Some(v) = value else {
        return Ok(DEFAULT_CEILING);
    };
    let n: usize = v.trim().parse().map_err(|_| CliError::field(CEILING_VAR, format!("not a number: {v:?}")))?;
    if n > MAX_CEILING {
        return Err(CliError::field(CEILING_VAR, format!("{n} exceeds the supported maximum {MAX_CEILING}")));
    }
    Ok(n)
}

pub fn ceiling_from_env() -> Result<usize> {
    parse_ceiling(std::env::var(CEILING_VAR).ok().as_deref())
}
