//! `cubic-orbits`: sample random cubic rings, list small orbits, check the
//! sampler's distribution and time it.
//!
//! Exit codes: 0 success, 1 failed statistical test, 2 usage error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, Verdict};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sample(a) => commands::sample(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Stats(a) => commands::stats(a),
        Command::Bench(a) => commands::bench(a),
    };
    match result {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::StatisticalFailure) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
