//! Verification driver: wires the curve library into named claims and JSON reports.

pub mod args;
pub mod commands;
pub mod report;
pub mod setup;
pub mod theorem1;
pub mod theorem2;

use thiserror::Error;

pub use args::Cli;
pub use report::{Bundle, Certification, ClaimReport};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad user input; exit code 2.
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] curveaut_core::Error),
    /// An internal consistency check failed.
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            _ => 1,
        }
    }
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Sets the size of the global thread pool. Only the first call has an effect.
pub fn init_threads(n: usize) {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
}

pub fn run(cli: &Cli) -> Output {
    init_threads(cli.threads.unwrap_or(1));
    match commands::dispatch(cli) {
        Ok((stdout, pass)) => Output {
            stdout,
            stderr: String::new(),
            code: if pass { 0 } else { 1 },
        },
        Err(e) => Output {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}
