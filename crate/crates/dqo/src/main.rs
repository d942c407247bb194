//! Binary entry point: parse arguments, dispatch, map outcomes to exit codes.
//!
//! Exit codes: 0 on success, 1 when the verification battery ran but a check
//! failed, 2 for usage or runtime errors.

use std::process::ExitCode;

use clap::Parser;
use dqo::cli::Cli;
use dqo::Outcome;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dqo::run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
