//! Command-line front end for the damped-oscillator energy library.
//!
//! `dqo` exposes the three thermal energies (mean, internal, Gibbs) of a
//! harmonic oscillator damped by an Ohmic or Drude bath, their spectral
//! distributions, a built-in table of published reference values, a peak
//! finder for the 3D magnetic-field distributions, and a randomized
//! self-verification battery that cross-checks every computational route
//! against the others.
//!
//! All output is assembled into a single in-memory string and written in one
//! piece (to stdout or `--out`), so identical invocations produce
//! byte-identical results even when the underlying computation runs in
//! parallel.

pub mod cli;
pub mod distribution;
pub mod energy;
pub mod output;
pub mod peaks;
pub mod reference;
pub mod rng;
pub mod table;
pub mod verify;

use anyhow::Result;

/// Exit status the binary should terminate with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Command completed and, where applicable, all checks passed.
    Success,
    /// The verification battery ran to completion but a check failed.
    VerificationFailed,
}

/// Run a parsed command and write its report to the selected destination.
pub fn run(command: cli::Command) -> Result<Outcome> {
    match command {
        cli::Command::Energy(args) => {
            let rendered = energy::run(&args)?;
            output::write(&args.out, &rendered)?;
            Ok(Outcome::Success)
        }
        cli::Command::Distribution(args) => {
            let rendered = distribution::run(&args)?;
            output::write(&args.out, &rendered)?;
            Ok(Outcome::Success)
        }
        cli::Command::Table(args) => {
            let rendered = table::run(&args)?;
            output::write(&args.out, &rendered)?;
            Ok(Outcome::Success)
        }
        cli::Command::Peaks(args) => {
            let rendered = peaks::run(&args)?;
            output::write(&args.out, &rendered)?;
            Ok(Outcome::Success)
        }
        cli::Command::Verify(args) => {
            let (rendered, passed) = verify::run(&args)?;
            output::write(&args.out, &rendered)?;
            if passed {
                Ok(Outcome::Success)
            } else {
                Ok(Outcome::VerificationFailed)
            }
        }
    }
}
