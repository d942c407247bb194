//! The `table` subcommand: recompute the embedded reference energies.
//!
//! The reference rows (see [`crate::reference`]) fix γ = ω₀, ω_cut = 10·ω₀
//! and, for the 3D set, ω_c = 2.5·ω₀. Each row is recomputed by the
//! Matsubara series and reported next to the published value together with
//! the signed deviation. The published values carry five to six significant
//! digits, so deviations at the few-10⁻⁶ level are rounding of the
//! reference, not error of the computation.

use anyhow::Result;
use dqo_core::matsubara;
use dqo_core::model::{BathSpec, SystemSpec, ThermalState};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{Format, RefSet, TableArgs};
use crate::output;
use crate::reference::{self, ReferenceRow};

/// One quantity of one recomputed reference row.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    /// Reference set, `"1d"` or `"3d"`.
    pub set: &'static str,
    /// Inverse temperature α of the row.
    pub alpha: f64,
    /// Which energy: `"mean"`, `"internal"` or `"gibbs"`.
    pub quantity: &'static str,
    /// Recomputed β·energy.
    pub computed: f64,
    /// Published β·energy.
    pub reference: f64,
    /// `computed − reference`.
    pub deviation: f64,
}

#[derive(Debug, Serialize)]
struct TableDocument<'a> {
    command: &'static str,
    gamma: f64,
    omega_cut: f64,
    cyclotron: f64,
    terms: usize,
    worst_abs_deviation: f64,
    rows: &'a [TableRow],
}

/// Recompute the selected reference set(s) and render the report.
pub fn run(args: &TableArgs) -> Result<String> {
    let refs: Vec<ReferenceRow> = match args.set {
        RefSet::OneD => reference::set("1d"),
        RefSet::ThreeD => reference::set("3d"),
        RefSet::All => reference::rows(),
    };
    let rows: Vec<TableRow> = refs
        .par_iter()
        .map(|r| compute_rows(r, args.terms))
        .collect::<Result<Vec<Vec<TableRow>>>>()?
        .into_iter()
        .flatten()
        .collect();
    render(args, &rows)
}

/// Recompute one published row by the Matsubara series, yielding one
/// [`TableRow`] per energy.
pub fn compute_rows(r: &ReferenceRow, terms: usize) -> Result<Vec<TableRow>> {
    let mut sys = SystemSpec::new(1.0)?;
    if r.set == "3d" {
        sys = sys.with_cyclotron(reference::CYCLOTRON)?;
    }
    let bath = BathSpec::drude(reference::GAMMA, reference::OMEGA_CUT)?;
    let state = ThermalState::from_alpha(r.alpha, &sys)?;
    let (mean, internal, gibbs) = if r.set == "3d" {
        (
            matsubara::mean_energy_3d(&sys, &bath, &state, terms)?,
            matsubara::internal_energy_3d(&sys, &bath, &state, terms)?,
            matsubara::gibbs_energy_3d(&sys, &bath, &state, terms)?,
        )
    } else {
        (
            matsubara::mean_energy_1d(&sys, &bath, &state, terms)?,
            matsubara::internal_energy_1d(&sys, &bath, &state, terms)?,
            matsubara::gibbs_energy_1d(&sys, &bath, &state, terms)?,
        )
    };
    let row = |quantity, computed: f64, reference: f64| TableRow {
        set: r.set,
        alpha: r.alpha,
        quantity,
        computed,
        reference,
        deviation: computed - reference,
    };
    Ok(vec![
        row("mean", mean.beta_energy, r.beta_mean),
        row("internal", internal.beta_energy, r.beta_internal),
        row("gibbs", gibbs.beta_energy, r.beta_gibbs),
    ])
}

fn worst_abs_deviation(rows: &[TableRow]) -> f64 {
    rows.iter().map(|r| r.deviation.abs()).fold(0.0, f64::max)
}

fn render(args: &TableArgs, rows: &[TableRow]) -> Result<String> {
    let worst = worst_abs_deviation(rows);
    match args.out.format {
        Format::Csv => {
            let mut s = String::new();
            s.push_str("# dqo table\n");
            s.push_str(&format!(
                "# gamma: {}, omega_cut: {}, cyclotron (3d set): {}\n",
                output::machine(reference::GAMMA),
                output::machine(reference::OMEGA_CUT),
                output::machine(reference::CYCLOTRON),
            ));
            s.push_str(&format!("# terms: {}\n", args.terms));
            s.push_str(&format!("# worst_abs_deviation: {}\n", output::machine(worst)));
            s.push_str("set,alpha,quantity,computed,reference,deviation\n");
            for r in rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.set,
                    output::machine(r.alpha),
                    r.quantity,
                    output::machine(r.computed),
                    output::machine(r.reference),
                    output::machine(r.deviation),
                ));
            }
            Ok(s)
        }
        Format::Json => {
            let doc = TableDocument {
                command: "table",
                gamma: reference::GAMMA,
                omega_cut: reference::OMEGA_CUT,
                cyclotron: reference::CYCLOTRON,
                terms: args.terms,
                worst_abs_deviation: worst,
                rows,
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        Format::Report => {
            let mut s = String::new();
            s.push_str(&format!(
                "table  gamma={} omega_cut={} cyclotron(3d)={} terms={}\n\n",
                output::human(reference::GAMMA),
                output::human(reference::OMEGA_CUT),
                output::human(reference::CYCLOTRON),
                args.terms,
            ));
            s.push_str(&format!(
                "{} {} {} {} {} {}\n",
                output::pad("set", 4),
                output::pad("alpha", 10),
                output::pad("quantity", 9),
                output::pad("computed", 13),
                output::pad("reference", 13),
                output::pad("deviation", 13),
            ));
            for r in rows {
                s.push_str(&format!(
                    "{} {} {} {} {} {}\n",
                    output::pad(r.set, 4),
                    output::pad(&output::human(r.alpha), 10),
                    output::pad(r.quantity, 9),
                    output::pad(&output::human(r.computed), 13),
                    output::pad(&output::human(r.reference), 13),
                    output::pad(&output::human(r.deviation), 13),
                ));
            }
            s.push_str(&format!(
                "\nworst |deviation|: {}\n",
                output::human(worst)
            ));
            Ok(s)
        }
    }
}
