//! Command-line front end for `genhermite`.
//!
//! The binary is a thin wrapper over [`run`]; the command implementations
//! write into any [`std::io::Write`] so they can be exercised directly.

pub mod args;
pub mod commands;
pub mod format;

use std::io;

use thiserror::Error;

pub use args::{Cli, Command, OutputFormat};

/// Set to `1` to flip the sign of `2δe^{-x²}` in the raising operator during
/// `verify`. Negative control for the verification suite itself.
pub const INJECT_FAULT_ENV: &str = "GENHERMITE_INJECT_FAULT";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("{0}")]
    VerificationFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<genhermite::Error> for CliError {
    fn from(e: genhermite::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Eval(a) => commands::eval(a, &mut io::stdout().lock()),
        Command::Table(a) => commands::table(a),
        Command::Figure(a) => commands::figure(a),
        Command::Verify(a) => {
            let inject = std::env::var(INJECT_FAULT_ENV).map(|v| v == "1").unwrap_or(false);
            commands::verify(a, inject, &mut io::stdout().lock())
        }
        Command::Partner(a) => commands::partner(a),
    }
}
