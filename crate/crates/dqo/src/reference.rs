//! Embedded published reference energies.
//!
//! The values live in `data/reference_energies.csv`, versioned with the
//! crate; both reference sets share γ = ω₀ and ω_cut = 10ω₀, with the 3D set
//! at ω_c = 2.5ω₀.

/// Damping strength γ/ω₀ of both reference sets.
pub const GAMMA: f64 = 1.0;
/// Drude cutoff ω_cut/ω₀ of both reference sets.
pub const OMEGA_CUT: f64 = 10.0;
/// Cyclotron frequency ω_c/ω₀ of the 3D reference set.
pub const CYCLOTRON: f64 = 2.5;

/// One published row: three reduced energies at a single α = βω₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    /// Reference set: `"1d"` (field-free) or `"3d"` (ω_c = 2.5ω₀).
    pub set: &'static str,
    /// Inverse temperature in units of 1/ω₀.
    pub alpha: f64,
    /// Published β·E.
    pub beta_mean: f64,
    /// Published β·U.
    pub beta_internal: f64,
    /// Published β·G.
    pub beta_gibbs: f64,
}

const RAW: &str = include_str!("../data/reference_energies.csv");

/// All published rows in file order (1d block first, then 3d).
pub fn rows() -> Vec<ReferenceRow> {
    RAW.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("set,"))
        .map(|line| {
            let mut parts = line.split(',');
            let mut field = || parts.next().expect("malformed embedded reference row");
            let set = field();
            let parse = |s: &str| s.parse::<f64>().expect("malformed embedded reference value");
            ReferenceRow {
                set,
                alpha: parse(field()),
                beta_mean: parse(field()),
                beta_internal: parse(field()),
                beta_gibbs: parse(field()),
            }
        })
        .collect()
}

/// Rows of one reference set (`"1d"` or `"3d"`).
pub fn set(name: &str) -> Vec<ReferenceRow> {
    rows().into_iter().filter(|r| r.set == name).collect()
}
