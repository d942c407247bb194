//! The `energy` subcommand: β·(mean, internal, Gibbs) energies.
//!
//! The series route sums Matsubara terms and reports a truncation-tail
//! estimate per energy; the quadrature route integrates the spectral
//! distributions adaptively (mean and internal only — the Gibbs energy has
//! no frequency-integral representation).
//!
//! A strictly Ohmic kernel has divergent mean- and Gibbs-energy series, so
//! Ohmic rows fill those cells as empty, carry an explanatory note, and
//! compute the internal energy through the cutoff-capped quadrature instead.

use anyhow::Result;
use dqo_core::matsubara;
use dqo_core::model::{BathSpec, SystemSpec, ThermalState};
use dqo_core::quadrature::{self, QuadratureConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{BathKind, EnergyArgs, Format, Method};
use crate::output;

/// One computed temperature point.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyRow {
    /// Inverse temperature α = ω₀/T.
    pub alpha: f64,
    /// β·(mean energy); absent when the requested route cannot produce it.
    pub beta_mean: Option<f64>,
    /// β·(internal energy).
    pub beta_internal: Option<f64>,
    /// β·(Gibbs energy); absent on the quadrature route.
    pub beta_gibbs: Option<f64>,
    /// Series truncation-tail estimate for the mean energy.
    pub mean_tail: Option<f64>,
    /// Series truncation-tail estimate for the internal energy.
    pub internal_tail: Option<f64>,
    /// Series truncation-tail estimate for the Gibbs energy.
    pub gibbs_tail: Option<f64>,
    /// Explanation of any absent cells.
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
struct EnergyDocument<'a> {
    command: &'static str,
    bath: &'static str,
    gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_cut: Option<f64>,
    model: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_c: Option<f64>,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rel_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ohmic_cap: Option<f64>,
    rows: &'a [EnergyRow],
}

/// Compute the requested rows and render them in the selected format.
pub fn run(args: &EnergyArgs) -> Result<String> {
    let (sys, bath) = args.model.build()?;
    let alphas = args.alpha.values();
    let rows: Vec<EnergyRow> = alphas
        .par_iter()
        .map(|&alpha| compute_row(args, &sys, &bath, alpha))
        .collect::<Result<_>>()?;
    render(args, &rows)
}

fn quad_config(args: &EnergyArgs) -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: args.tol,
        ohmic_cap_factor: args.ohmic_cap,
        ..QuadratureConfig::default()
    }
}

fn compute_row(
    args: &EnergyArgs,
    sys: &SystemSpec,
    bath: &BathSpec,
    alpha: f64,
) -> Result<EnergyRow> {
    let state = ThermalState::from_alpha(alpha, sys)?;
    let row = match (args.method, args.model.bath) {
        (Method::Series, BathKind::Drude) => series_row(args, sys, bath, &state)?,
        (Method::Quadrature, BathKind::Drude) => {
            let cfg = quad_config(args);
            let (mean, internal) = if args.model.is_3d() {
                (
                    quadrature::mean_energy_3d_quad(sys, bath, &state, &cfg)?,
                    quadrature::internal_energy_3d_quad(sys, bath, &state, &cfg)?,
                )
            } else {
                (
                    quadrature::mean_energy_1d_quad(sys, bath, &state, &cfg)?,
                    quadrature::internal_energy_1d_quad(sys, bath, &state, &cfg)?,
                )
            };
            EnergyRow {
                alpha,
                beta_mean: Some(mean),
                beta_internal: Some(internal),
                beta_gibbs: None,
                mean_tail: None,
                internal_tail: None,
                gibbs_tail: None,
                note: Some(
                    "Gibbs energy has no frequency-integral route; use --method series"
                        .to_string(),
                ),
            }
        }
        (Method::Series, BathKind::Ohmic) => {
            // All three Matsubara series diverge for the strictly Ohmic
            // kernel; the internal energy still has a meaningful capped
            // integral, so report that one and explain the empty cells.
            let cfg = quad_config(args);
            let internal = quadrature::internal_energy_1d_quad(sys, bath, &state, &cfg)?;
            EnergyRow {
                alpha,
                beta_mean: None,
                beta_internal: Some(internal),
                beta_gibbs: None,
                mean_tail: None,
                internal_tail: None,
                gibbs_tail: None,
                note: Some(format!(
                    "ohmic series diverge; internal energy integrated up to {} omega0",
                    output::machine(args.ohmic_cap)
                )),
            }
        }
        (Method::Quadrature, BathKind::Ohmic) => {
            let cfg = quad_config(args);
            let mean = quadrature::mean_energy_1d_quad(sys, bath, &state, &cfg)?;
            let internal = quadrature::internal_energy_1d_quad(sys, bath, &state, &cfg)?;
            EnergyRow {
                alpha,
                beta_mean: Some(mean),
                beta_internal: Some(internal),
                beta_gibbs: None,
                mean_tail: None,
                internal_tail: None,
                gibbs_tail: None,
                note: Some(format!(
                    "ohmic integrals capped at {} omega0; no Gibbs route",
                    output::machine(args.ohmic_cap)
                )),
            }
        }
    };
    Ok(row)
}

fn series_row(
    args: &EnergyArgs,
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
) -> Result<EnergyRow> {
    let n = args.terms;
    let (mean, internal, gibbs) = if args.model.is_3d() {
        (
            matsubara::mean_energy_3d(sys, bath, state, n)?,
            matsubara::internal_energy_3d(sys, bath, state, n)?,
            matsubara::gibbs_energy_3d(sys, bath, state, n)?,
        )
    } else {
        (
            matsubara::mean_energy_1d(sys, bath, state, n)?,
            matsubara::internal_energy_1d(sys, bath, state, n)?,
            matsubara::gibbs_energy_1d(sys, bath, state, n)?,
        )
    };
    Ok(EnergyRow {
        alpha: state.alpha(),
        beta_mean: Some(mean.beta_energy),
        beta_internal: Some(internal.beta_energy),
        beta_gibbs: Some(gibbs.beta_energy),
        mean_tail: Some(mean.tail_estimate),
        internal_tail: Some(internal.tail_estimate),
        gibbs_tail: Some(gibbs.tail_estimate),
        note: None,
    })
}

fn bath_name(kind: BathKind) -> &'static str {
    match kind {
        BathKind::Ohmic => "ohmic",
        BathKind::Drude => "drude",
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Series => "series",
        Method::Quadrature => "quadrature",
    }
}

fn render(args: &EnergyArgs, rows: &[EnergyRow]) -> Result<String> {
    let model = if args.model.is_3d() { "3d" } else { "1d" };
    let uses_quadrature =
        args.method == Method::Quadrature || args.model.bath == BathKind::Ohmic;
    match args.out.format {
        Format::Csv => {
            let mut s = String::new();
            s.push_str("# dqo energy\n");
            s.push_str(&format!(
                "# bath: {}, gamma: {}\n",
                bath_name(args.model.bath),
                output::machine(args.model.gamma)
            ));
            if let Some(w) = args.model.omega_cut {
                s.push_str(&format!("# omega_cut: {}\n", output::machine(w)));
            }
            s.push_str(&format!("# model: {model}\n"));
            if let Some(w) = args.model.omega_c {
                s.push_str(&format!("# omega_c: {}\n", output::machine(w)));
            }
            match args.method {
                Method::Series => {
                    s.push_str(&format!("# method: series, terms: {}\n", args.terms))
                }
                Method::Quadrature => s.push_str(&format!(
                    "# method: quadrature, rel_tol: {}\n",
                    output::machine(args.tol)
                )),
            }
            s.push_str(
                "alpha,beta_mean,beta_internal,beta_gibbs,mean_tail,internal_tail,gibbs_tail,note\n",
            );
            for r in rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    output::machine(r.alpha),
                    output::machine_opt(r.beta_mean),
                    output::machine_opt(r.beta_internal),
                    output::machine_opt(r.beta_gibbs),
                    output::machine_opt(r.mean_tail),
                    output::machine_opt(r.internal_tail),
                    output::machine_opt(r.gibbs_tail),
                    r.note.as_deref().unwrap_or(""),
                ));
            }
            Ok(s)
        }
        Format::Json => {
            let doc = EnergyDocument {
                command: "energy",
                bath: bath_name(args.model.bath),
                gamma: args.model.gamma,
                omega_cut: args.model.omega_cut,
                model,
                omega_c: args.model.omega_c,
                method: method_name(args.method),
                terms: (args.method == Method::Series).then_some(args.terms),
                rel_tol: uses_quadrature.then_some(args.tol),
                ohmic_cap: (args.model.bath == BathKind::Ohmic).then_some(args.ohmic_cap),
                rows,
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        Format::Report => {
            let mut s = String::new();
            s.push_str(&format!(
                "energy  bath={} gamma={} model={} method={}\n\n",
                bath_name(args.model.bath),
                output::human(args.model.gamma),
                model,
                method_name(args.method),
            ));
            s.push_str(&format!(
                "{} {} {} {}\n",
                output::pad("alpha", 12),
                output::pad("beta_mean", 13),
                output::pad("beta_internal", 14),
                output::pad("beta_gibbs", 13),
            ));
            for r in rows {
                let cell = |v: Option<f64>| v.map(output::human).unwrap_or_else(|| "-".into());
                s.push_str(&format!(
                    "{} {} {} {}\n",
                    output::pad(&output::human(r.alpha), 12),
                    output::pad(&cell(r.beta_mean), 13),
                    output::pad(&cell(r.beta_internal), 14),
                    output::pad(&cell(r.beta_gibbs), 13),
                ));
                if let Some(note) = &r.note {
                    s.push_str(&format!("    note: {note}\n"));
                }
            }
            Ok(s)
        }
    }
}
