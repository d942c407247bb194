//! Number formatting and report delivery.
//!
//! Two numeric renderings are used throughout: `machine` keeps every bit of a
//! double (17 significant digits, enough to round-trip), `human` keeps six
//! for aligned report tables. CSV bodies always use the machine form so that
//! downstream tooling never loses precision to the printer.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};

/// Full-precision scientific rendering; round-trips any finite `f64`.
pub fn machine(x: f64) -> String {
    format!("{x:.16e}")
}

/// Six-significant-digit rendering for report tables.
pub fn human(x: f64) -> String {
    format!("{x:.5e}")
}

/// Machine rendering of an optional value; `None` becomes an empty cell.
pub fn machine_opt(x: Option<f64>) -> String {
    x.map(machine).unwrap_or_default()
}

/// Write a finished report to `--out` when given, stdout otherwise.
pub fn write(dest: &crate::cli::OutputArgs, rendered: &str) -> Result<()> {
    match &dest.out {
        Some(path) => write_file(path, rendered),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .context("writing report to stdout")?;
            Ok(())
        }
    }
}

fn write_file(path: &PathBuf, rendered: &str) -> Result<()> {
    fs::write(path, rendered).with_context(|| format!("writing report to {}", path.display()))
}

/// Pad `cell` on the left to `width` columns for aligned report tables.
pub fn pad(cell: &str, width: usize) -> String {
    format!("{cell:>width$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_rendering_round_trips() {
        for &x in &[1.0, -2.5e-13, std::f64::consts::PI, 1.1328849948755895e2] {
            let back: f64 = machine(x).parse().unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn human_rendering_keeps_six_digits() {
        assert_eq!(human(1.1328849948755895), "1.13288e0");
    }

    #[test]
    fn absent_values_render_as_empty_cells() {
        assert_eq!(machine_opt(None), "");
        assert_eq!(machine_opt(Some(1.0)), machine(1.0));
    }
}
