//! The `peaks` subcommand: local maxima of a spectral distribution.
//!
//! The density is sampled on a logarithmic grid dense enough to separate
//! the magnetic-field-split resonances, every interior sample that beats
//! both neighbours seeds a golden-section refinement, and the refined
//! positions and heights are reported. In a strong field the 3D
//! distributions develop three peaks (two shifted in-plane modes plus the
//! axial mode); weak fields leave a single merged resonance.

use anyhow::{ensure, Result};
use dqo_core::spectral::{find_peaks, Peak};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{BathKind, Format, PeaksArgs};
use crate::distribution::{density_fn, kind_name};
use crate::output;

/// One refined local maximum.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PeakRow {
    /// 1-based index, ascending in frequency.
    pub peak: usize,
    /// Refined peak position in units of ω₀.
    pub omega: f64,
    /// Distribution value at the peak.
    pub value: f64,
}

#[derive(Debug, Serialize)]
struct PeaksDocument<'a> {
    command: &'static str,
    bath: &'static str,
    gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_cut: Option<f64>,
    model: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_c: Option<f64>,
    kind: &'static str,
    count: usize,
    rows: &'a [PeakRow],
}

/// Scan the selected distribution and render the refined maxima.
pub fn run(args: &PeaksArgs) -> Result<String> {
    let rows = compute(args)?;
    render(args, &rows)
}

/// Locate the maxima without rendering (shared with the test suite).
pub fn compute(args: &PeaksArgs) -> Result<Vec<PeakRow>> {
    ensure!(
        args.omega_min.is_finite() && args.omega_min > 0.0,
        "--omega-min must be positive"
    );
    ensure!(
        args.omega_max.is_finite() && args.omega_max > args.omega_min,
        "--omega-max must exceed --omega-min"
    );
    ensure!(args.per_decade >= 16, "--per-decade must be at least 16");
    let (sys, bath) = args.model.build()?;
    let density = density_fn(&sys, &bath, args.model.is_3d(), args.kind)?;

    let decades = (args.omega_max / args.omega_min).log10();
    let points = ((decades * args.per_decade as f64).ceil() as usize).max(2) + 1;
    let last = (points - 1) as f64;
    let ratio = args.omega_max / args.omega_min;
    let grid: Vec<f64> = (0..points)
        .map(|k| args.omega_min * ratio.powf(k as f64 / last))
        .collect();
    let values: Vec<f64> = grid.par_iter().map(|&w| density(w)).collect();

    let peaks: Vec<Peak> = find_peaks(&grid, &values, &*density);
    Ok(peaks
        .iter()
        .enumerate()
        .map(|(i, p)| PeakRow {
            peak: i + 1,
            omega: p.omega,
            value: p.value,
        })
        .collect())
}

fn render(args: &PeaksArgs, rows: &[PeakRow]) -> Result<String> {
    let model = if args.model.is_3d() { "3d" } else { "1d" };
    let bath = match args.model.bath {
        BathKind::Ohmic => "ohmic",
        BathKind::Drude => "drude",
    };
    match args.out.format {
        Format::Csv => {
            let mut s = String::new();
            s.push_str("# dqo peaks\n");
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
            s.push_str(&format!("# count: {}\n", rows.len()));
            s.push_str("peak,omega,value\n");
            for r in rows {
                s.push_str(&format!(
                    "{},{},{}\n",
                    r.peak,
                    output::machine(r.omega),
                    output::machine(r.value)
                ));
            }
            Ok(s)
        }
        Format::Json => {
            let doc = PeaksDocument {
                command: "peaks",
                bath,
                gamma: args.model.gamma,
                omega_cut: args.model.omega_cut,
                model,
                omega_c: args.model.omega_c,
                kind: kind_name(args.kind),
                count: rows.len(),
                rows,
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        Format::Report => {
            let mut s = String::new();
            s.push_str(&format!(
                "peaks  bath={bath} gamma={} model={model} kind={}  count={}\n\n",
                output::human(args.model.gamma),
                kind_name(args.kind),
                rows.len(),
            ));
            s.push_str(&format!(
                "{} {} {}\n",
                output::pad("peak", 4),
                output::pad("omega", 12),
                output::pad("value", 13)
            ));
            for r in rows {
                s.push_str(&format!(
                    "{} {} {}\n",
                    output::pad(&r.peak.to_string(), 4),
                    output::pad(&output::human(r.omega), 12),
                    output::pad(&output::human(r.value), 13)
                ));
            }
            Ok(s)
        }
    }
}
