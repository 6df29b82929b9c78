//! `pauli`: bounds and spectra of the semiclassical Dirichlet Pauli operator
//! on annuli and rasterized multiply connected domains.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

mod args;
mod commands;
mod inputs;
mod svg;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;
use pauli_core::error::{Error, ErrorCategory};

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: u8,
}

impl CliError {
    pub fn config(message: String) -> Self {
        CliError { message, code: 2 }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err.category() {
            ErrorCategory::Config | ErrorCategory::Io => 2,
            ErrorCategory::Numerical => 3,
        };
        CliError { message: err.to_string(), code }
    }
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    if let Some(threads) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_err()
        {
            eprintln!("error: could not configure the thread pool");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code)
        }
    }
}
