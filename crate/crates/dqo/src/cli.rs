//! Command-line argument definitions.
//!
//! Units follow the library convention ħ = k_B = 1 with the oscillator mass
//! and frequency fixed at m = 1, ω₀ = 1, so every frequency-like flag is
//! dimensionless (measured in units of ω₀) and every energy is reported as
//! the product β·energy.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dqo_core::model::{BathSpec, SystemSpec};

/// Thermal energies of damped quantum harmonic oscillators.
#[derive(Debug, Parser)]
#[command(name = "dqo", version, about)]
pub struct Cli {
    /// Subcommand to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Top-level subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute β·(mean, internal, Gibbs) energies at one or many temperatures.
    Energy(EnergyArgs),
    /// Sample a spectral energy distribution on a frequency grid.
    Distribution(DistributionArgs),
    /// Recompute the built-in table of published reference energies.
    Table(TableArgs),
    /// Locate local maxima of a spectral distribution.
    Peaks(PeaksArgs),
    /// Run the randomized self-verification battery.
    Verify(VerifyArgs),
}

/// Friction kernel families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BathKind {
    /// Strictly Ohmic kernel μ̃(ω) = mγ (no cutoff; energy integrals diverge).
    Ohmic,
    /// Drude-regularized kernel μ̃(ω) = mγ·ω_cut/(ω_cut − iω).
    Drude,
}

/// Report encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Comma-separated values with `#` comment lines, full precision.
    Csv,
    /// Single JSON document, full precision.
    Json,
    /// Aligned plain-text table, six significant digits.
    Report,
}

/// Computational route for the `energy` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Matsubara-series summation (all three energies).
    Series,
    /// Adaptive frequency-integral quadrature (mean and internal only).
    Quadrature,
}

/// Which spectral weight a distribution command samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityKind {
    /// Distribution of the mean energy E.
    Mean,
    /// Distribution of the internal energy U.
    Internal,
    /// Kinetic-energy part of the mean-energy distribution (1D only).
    Kinetic,
    /// Potential-energy part of the mean-energy distribution (1D only).
    Potential,
}

/// Oscillator/bath parameters shared by the computing subcommands.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Friction kernel family.
    #[arg(long, value_enum, default_value_t = BathKind::Drude)]
    pub bath: BathKind,

    /// Damping strength γ in units of ω₀.
    #[arg(long)]
    pub gamma: f64,

    /// Drude cutoff frequency ω_cut in units of ω₀ (Drude bath only).
    #[arg(long)]
    pub omega_cut: Option<f64>,

    /// Cyclotron frequency ω_c in units of ω₀; selects the 3D oscillator in
    /// a magnetic field (Drude bath only). Omit for the 1D oscillator.
    #[arg(long)]
    pub omega_c: Option<f64>,
}

impl ModelArgs {
    /// Validate the flag combination and build the library model types.
    pub fn build(&self) -> Result<(SystemSpec, BathSpec)> {
        let bath = match self.bath {
            BathKind::Drude => {
                let omega_cut = self
                    .omega_cut
                    .context("--bath drude requires --omega-cut")?;
                BathSpec::drude(self.gamma, omega_cut)?
            }
            BathKind::Ohmic => {
                ensure!(
                    self.omega_cut.is_none(),
                    "--omega-cut applies only to --bath drude"
                );
                ensure!(
                    self.omega_c.is_none(),
                    "the 3D oscillator (--omega-c) is only supported with --bath drude"
                );
                BathSpec::ohmic(self.gamma)?
            }
        };
        let mut sys = SystemSpec::new(1.0)?;
        if let Some(omega_c) = self.omega_c {
            sys = sys.with_cyclotron(omega_c)?;
        }
        Ok((sys, bath))
    }

    /// True when the 3D (magnetic-field) model is selected.
    pub fn is_3d(&self) -> bool {
        self.omega_c.is_some()
    }
}

/// Inverse-temperature selection: exactly one of a point or a sweep.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct AlphaChoice {
    /// Single inverse temperature α = ω₀/T.
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Inclusive sweep LO:HI:STEPS over the inverse temperature α.
    #[arg(long, value_name = "LO:HI:STEPS")]
    pub alpha_range: Option<SweepRange>,
}

impl AlphaChoice {
    /// Materialize the requested α values, ascending.
    pub fn values(&self) -> Vec<f64> {
        match (self.alpha, &self.alpha_range) {
            (Some(a), None) => vec![a],
            (None, Some(r)) => r.values(),
            // clap's group constraint (required, not multiple) rules the
            // remaining combinations out before this is reachable.
            _ => unreachable!("clap enforces exactly one of --alpha/--alpha-range"),
        }
    }
}

/// An inclusive linear sweep `LO:HI:STEPS`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    /// First value of the sweep.
    pub lo: f64,
    /// Last value of the sweep.
    pub hi: f64,
    /// Number of points, endpoints included.
    pub steps: usize,
}

impl SweepRange {
    /// Evenly spaced points from `lo` to `hi`, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let span = self.hi - self.lo;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| self.lo + span * k as f64 / last)
            .collect()
    }
}

impl FromStr for SweepRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected LO:HI:STEPS, got `{s}`"));
        }
        let lo: f64 = parts[0]
            .parse()
            .map_err(|e| format!("invalid LO `{}`: {e}", parts[0]))?;
        let hi: f64 = parts[1]
            .parse()
            .map_err(|e| format!("invalid HI `{}`: {e}", parts[1]))?;
        let steps: usize = parts[2]
            .parse()
            .map_err(|e| format!("invalid STEPS `{}`: {e}", parts[2]))?;
        if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 {
            return Err("LO and HI must be finite and positive".into());
        }
        if hi < lo {
            return Err("HI must not be below LO".into());
        }
        if steps == 0 {
            return Err("STEPS must be at least 1".into());
        }
        if steps == 1 && hi != lo {
            return Err("a single-step sweep requires HI == LO".into());
        }
        Ok(SweepRange { lo, hi, steps })
    }
}

/// Report format and destination, shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// Arguments of the `energy` subcommand.
#[derive(Debug, Args)]
pub struct EnergyArgs {
    /// Oscillator/bath model.
    #[command(flatten)]
    pub model: ModelArgs,

    /// Inverse temperature(s).
    #[command(flatten)]
    pub alpha: AlphaChoice,

    /// Matsubara terms summed per series.
    #[arg(long, default_value_t = 10_000)]
    pub terms: usize,

    /// Computational route.
    #[arg(long, value_enum, default_value_t = Method::Series)]
    pub method: Method,

    /// Relative tolerance of the adaptive quadrature (quadrature route).
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,

    /// Upper integration limit, in units of ω₀, applied to the divergent
    /// Ohmic energy integrals. Capped values depend on this cutoff.
    #[arg(long, default_value_t = 1e3)]
    pub ohmic_cap: f64,

    /// Report format and destination.
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Arguments of the `distribution` subcommand.
#[derive(Debug, Args)]
pub struct DistributionArgs {
    /// Oscillator/bath model.
    #[command(flatten)]
    pub model: ModelArgs,

    /// Which spectral weight to sample.
    #[arg(long, value_enum, default_value_t = DensityKind::Mean)]
    pub kind: DensityKind,

    /// Lower edge of the frequency grid, in units of ω₀.
    #[arg(long, default_value_t = 0.0)]
    pub omega_min: f64,

    /// Upper edge of the frequency grid, in units of ω₀.
    #[arg(long, default_value_t = 10.0)]
    pub omega_max: f64,

    /// Number of grid points, edges included.
    #[arg(long, default_value_t = 1001)]
    pub points: usize,

    /// Space the grid logarithmically (requires --omega-min > 0).
    #[arg(long)]
    pub log: bool,

    /// Skip the normalization integral ∫₀^∞ P(ω) dω.
    #[arg(long)]
    pub no_norm: bool,

    /// Report format and destination.
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Reference-table selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RefSet {
    /// 1D oscillator rows.
    #[value(name = "1d")]
    OneD,
    /// 3D magnetic-field rows.
    #[value(name = "3d")]
    ThreeD,
    /// Both sets.
    All,
}

/// Arguments of the `table` subcommand.
#[derive(Debug, Args)]
pub struct TableArgs {
    /// Which reference set to recompute.
    #[arg(long, value_enum, default_value_t = RefSet::All)]
    pub set: RefSet,

    /// Matsubara terms summed per series.
    #[arg(long, default_value_t = 10_000)]
    pub terms: usize,

    /// Report format and destination.
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Arguments of the `peaks` subcommand.
#[derive(Debug, Args)]
pub struct PeaksArgs {
    /// Oscillator/bath model.
    #[command(flatten)]
    pub model: ModelArgs,

    /// Which spectral weight to scan.
    #[arg(long, value_enum, default_value_t = DensityKind::Mean)]
    pub kind: DensityKind,

    /// Lower edge of the scan window, in units of ω₀ (must be positive).
    #[arg(long, default_value_t = 1e-2)]
    pub omega_min: f64,

    /// Upper edge of the scan window, in units of ω₀.
    #[arg(long, default_value_t = 20.0)]
    pub omega_max: f64,

    /// Scan resolution: grid points per decade of frequency.
    #[arg(long, default_value_t = 4800)]
    pub per_decade: usize,

    /// Report format and destination.
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Arguments of the `verify` subcommand.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Which kernel family's battery to run.
    #[arg(long, value_enum, default_value_t = BathKind::Drude)]
    pub bath: BathKind,

    /// Seed of the deterministic parameter-draw generator.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Randomized parameter sets per cross-method check.
    #[arg(long, default_value_t = 50)]
    pub sets: usize,

    /// Report format and destination.
    #[command(flatten)]
    pub out: OutputArgs,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn sweep_range_parses_and_materializes() {
        let r: SweepRange = "0.5:2.5:5".parse().unwrap();
        assert_eq!(r.values(), vec![0.5, 1.0, 1.5, 2.0, 2.5]);
        let single: SweepRange = "1.5:1.5:1".parse().unwrap();
        assert_eq!(single.values(), vec![1.5]);
    }

    #[test]
    fn sweep_range_rejects_malformed_input() {
        assert!("1:2".parse::<SweepRange>().is_err());
        assert!("0:2:3".parse::<SweepRange>().is_err());
        assert!("2:1:3".parse::<SweepRange>().is_err());
        assert!("1:2:0".parse::<SweepRange>().is_err());
        assert!("1:2:1".parse::<SweepRange>().is_err());
    }

    #[test]
    fn model_args_reject_inconsistent_combinations() {
        let ohmic_with_cut = ModelArgs {
            bath: BathKind::Ohmic,
            gamma: 0.5,
            omega_cut: Some(10.0),
            omega_c: None,
        };
        assert!(ohmic_with_cut.build().is_err());

        let drude_without_cut = ModelArgs {
            bath: BathKind::Drude,
            gamma: 0.5,
            omega_cut: None,
            omega_c: None,
        };
        assert!(drude_without_cut.build().is_err());

        let ohmic_3d = ModelArgs {
            bath: BathKind::Ohmic,
            gamma: 0.5,
            omega_cut: None,
            omega_c: Some(1.0),
        };
        assert!(ohmic_3d.build().is_err());
    }
}
