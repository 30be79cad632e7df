//! Command-line front end for `monty-core`: exact queries, simulations,
//! bias sweeps, exact-versus-simulated comparisons and an interactive game.
//!
//! Exit codes are a stable contract: `0` success, `1` statistical
//! disagreement in `compare`, `2` usage error, `3` conditioning on an
//! impossible event.

pub mod args;
pub mod commands;
pub mod parallel;
pub mod play;
pub mod record;

use std::io::{self, Write};

use thiserror::Error;

pub use args::Cli;
pub use record::{OutputRecord, DEFAULT_PRECISION};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot condition on an event of probability zero")]
    ImpossibleConditioning,
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::ImpossibleConditioning => 3,
            CliError::Io(_) => 2,
        }
    }
}

impl From<monty_core::Error> for CliError {
    fn from(err: monty_core::Error) -> Self {
        match err {
            monty_core::Error::ConditioningOnNull => CliError::ImpossibleConditioning,
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Runs a parsed command line, writing the rendered output to `out`, and
/// returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    commands::dispatch(cli, out)
}
