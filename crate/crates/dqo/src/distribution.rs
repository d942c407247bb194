//! The `distribution` subcommand: spectral energy distributions on a grid.
//!
//! Every supported weight integrates the single-mode thermal energy against
//! a frequency distribution: `mean` and `internal` are the normalized
//! distributions behind the mean and internal energies, `kinetic` and
//! `potential` split the 1D mean-energy weight into its two quadratic
//! contributions. Unless suppressed, the report carries the numerically
//! integrated norm ∫₀^∞ P(ω) dω as a cross-check (1 for `mean` and
//! `internal` by construction).

use anyhow::{bail, ensure, Result};
use dqo_core::drude::{invert_drude, magneto_poles};
use dqo_core::model::{BathSpec, SystemSpec};
use dqo_core::quadrature::{density_norm, QuadratureConfig};
use dqo_core::spectral;
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{BathKind, DensityKind, DistributionArgs, Format};
use crate::output;

/// One sampled grid point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DistributionRow {
    /// Frequency in units of ω₀.
    pub omega: f64,
    /// Distribution value at `omega`.
    pub density: f64,
}

#[derive(Debug, Serialize)]
struct DistributionDocument<'a> {
    command: &'static str,
    bath: &'static str,
    gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_cut: Option<f64>,
    model: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_c: Option<f64>,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    norm: Option<f64>,
    rows: &'a [DistributionRow],
}

/// Name a density the way the CLI spells it.
pub fn kind_name(kind: DensityKind) -> &'static str {
    match kind {
        DensityKind::Mean => "mean",
        DensityKind::Internal => "internal",
        DensityKind::Kinetic => "kinetic",
        DensityKind::Potential => "potential",
    }
}

/// Build the selected spectral weight as a closure over frequency.
///
/// Validates the kind/model combination: the kinetic and potential splits
/// exist only for the 1D oscillator.
pub fn density_fn(
    sys: &SystemSpec,
    bath: &BathSpec,
    is_3d: bool,
    kind: DensityKind,
) -> Result<Box<dyn Fn(f64) -> f64 + Send + Sync>> {
    let sys = *sys;
    let bath = *bath;
    let f: Box<dyn Fn(f64) -> f64 + Send + Sync> = match (kind, is_3d) {
        (DensityKind::Mean, false) => Box::new(move |w| spectral::p_e_1d(&sys, &bath, w)),
        (DensityKind::Mean, true) => Box::new(move |w| spectral::p_e_3d(&sys, &bath, w)),
        (DensityKind::Internal, false) => match bath {
            BathSpec::Drude { .. } => {
                let poles = invert_drude(&sys, &bath)?;
                Box::new(move |w| spectral::p_u_1d(&poles, w))
            }
            BathSpec::Ohmic { .. } => {
                Box::new(move |w| spectral::p_u_log_derivative(&sys, &bath, w))
            }
        },
        (DensityKind::Internal, true) => {
            let poles = invert_drude(&sys, &bath)?;
            let mp = magneto_poles(&poles, sys.cyclotron());
            Box::new(move |w| spectral::p_u_3d(&poles, &mp, w))
        }
        (DensityKind::Kinetic, false) => Box::new(move |w| spectral::p_kin_1d(&sys, &bath, w)),
        (DensityKind::Potential, false) => Box::new(move |w| spectral::p_pot_1d(&sys, &bath, w)),
        (DensityKind::Kinetic | DensityKind::Potential, true) => {
            bail!("the kinetic/potential split is defined for the 1D oscillator only")
        }
    };
    Ok(f)
}

/// Frequency at which the norm integrals switch to the folded tail.
pub fn norm_split(bath: &BathSpec) -> f64 {
    match bath {
        BathSpec::Drude { omega_cut, .. } => 10.0 * omega_cut.max(1.0),
        BathSpec::Ohmic { .. } => 10.0,
    }
}

fn build_grid(args: &DistributionArgs) -> Result<Vec<f64>> {
    ensure!(
        args.omega_min.is_finite() && args.omega_max.is_finite(),
        "grid edges must be finite"
    );
    ensure!(args.omega_min >= 0.0, "--omega-min must be non-negative");
    ensure!(
        args.omega_max > args.omega_min,
        "--omega-max must exceed --omega-min"
    );
    ensure!(args.points >= 2, "--points must be at least 2");
    let n = args.points;
    let last = (n - 1) as f64;
    if args.log {
        ensure!(args.omega_min > 0.0, "--log requires --omega-min > 0");
        let ratio = args.omega_max / args.omega_min;
        Ok((0..n)
            .map(|k| args.omega_min * ratio.powf(k as f64 / last))
            .collect())
    } else {
        let span = args.omega_max - args.omega_min;
        Ok((0..n)
            .map(|k| args.omega_min + span * k as f64 / last)
            .collect())
    }
}

/// Sample the requested distribution and render the report.
pub fn run(args: &DistributionArgs) -> Result<String> {
    let (sys, bath) = args.model.build()?;
    let density = density_fn(&sys, &bath, args.model.is_3d(), args.kind)?;
    let grid = build_grid(args)?;
    let rows: Vec<DistributionRow> = grid
        .par_iter()
        .map(|&omega| DistributionRow {
            omega,
            density: density(omega),
        })
        .collect();
    let norm = if args.no_norm {
        None
    } else {
        let cfg = QuadratureConfig::default();
        Some(density_norm(&*density, norm_split(&bath), &cfg)?)
    };
    render(args, norm, &rows)
}

fn render(args: &DistributionArgs, norm: Option<f64>, rows: &[DistributionRow]) -> Result<String> {
    let model = if args.model.is_3d() { "3d" } else { "1d" };
    let bath = match args.model.bath {
        BathKind::Ohmic => "ohmic",
        BathKind::Drude => "drude",
    };
    match args.out.format {
        Format::Csv => {
            let mut s = String::new();
            s.push_str("# dqo distribution\n");
            s.push_str(&format!(
                "# bath: {bath}, gamma: {}\n",
                output::machine(args.model.gamma)
            ));
            if let Some(w) = args.model.omega_cut {
                s.push_str(&format!("# omega_cut: {}\n", output::machine(w)));
            }
            s.push_str(&format!("# model: {model}\n"));
            if let Some(w) = args.model.omega_c {
                s.push_str(&format!("# omega_c: {}\n", output::machine(w)));
            }
            s.push_str(&format!("# kind: {}\n", kind_name(args.kind)));
            if let Some(n) = norm {
                s.push_str(&format!("# norm: {}\n", output::machine(n)));
            }
            s.push_str("omega,density\n");
            for r in rows {
                s.push_str(&format!(
                    "{},{}\n",
                    output::machine(r.omega),
                    output::machine(r.density)
                ));
            }
            Ok(s)
        }
        Format::Json => {
            let doc = DistributionDocument {
                command: "distribution",
                bath,
                gamma: args.model.gamma,
                omega_cut: args.model.omega_cut,
                model,
                omega_c: args.model.omega_c,
                kind: kind_name(args.kind),
                norm,
                rows,
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        Format::Report => {
            let mut s = String::new();
            s.push_str(&format!(
                "distribution  bath={bath} gamma={} model={model} kind={}\n",
                output::human(args.model.gamma),
                kind_name(args.kind),
            ));
            if let Some(n) = norm {
                s.push_str(&format!("norm: {}\n", output::human(n)));
            }
            s.push('\n');
            s.push_str(&format!(
                "{} {}\n",
                output::pad("omega", 12),
                output::pad("density", 13)
            ));
            for r in rows {
                s.push_str(&format!(
                    "{} {}\n",
                    output::pad(&output::human(r.omega), 12),
                    output::pad(&output::human(r.density), 13)
                ));
            }
            Ok(s)
        }
    }
}
