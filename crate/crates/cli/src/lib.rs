//! Command-line front end: `spectrum`, `eval`, `verify` and `demo`.
//!
//! Structured results go to standard output in one piece, so a failing
//! command never leaves partial output behind.

pub mod args;
pub mod commands;
pub mod complex_arg;
pub mod descriptor;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

use crate::args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] heun_ghf::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Library(heun_ghf::Error::Exceptional | heun_ghf::Error::Unsupported) => {
                EXIT_UNSUPPORTED
            }
            CliError::Library(heun_ghf::Error::InvalidParameter { .. }) => EXIT_USAGE,
            _ => EXIT_VERIFY_FAILED,
        }
    }
}

/// Bytes for standard output and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: Vec<u8>,
    pub code: i32,
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Eval(a) => commands::eval(a),
        Command::Verify(a) => commands::verify(a),
        Command::Demo(a) => commands::demo(a),
    }
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(&outcome.stdout)
                .and_then(|_| out.flush())
                .is_err()
            {
                return EXIT_VERIFY_FAILED;
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
