//! The `verify` subcommand: randomized cross-validation of every route.
//!
//! Correctness of the library rests on redundancy: the same physical
//! quantity is computable as a Matsubara series, as a frequency integral of
//! a spectral distribution, and (for the internal energy) as an explicit
//! finite-bath normal-mode sum, while the pole algebra behind the
//! distributions obeys exact Vieta identities. The battery draws random
//! parameter sets from a seeded generator and checks that all routes agree
//! to tight tolerances, plus the analytically known limits (classical, weak
//! coupling, large cutoff) and the strictly-Ohmic degeneracies.
//!
//! Every check is an independent function returning a [`CheckOutcome`], so
//! external test suites can run them individually.

use anyhow::Result;
use dqo_core::drude::invert_drude;
use dqo_core::matsubara::{self, weak_coupling_energy, EnergyResult};
use dqo_core::model::{BathSpec, SystemSpec, ThermalState};
use dqo_core::normal_mode::{discretize_bath, internal_energy_finite_n};
use dqo_core::quadrature::{self, density_norm, QuadratureConfig};
use dqo_core::spectral;
use dqo_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{BathKind, DensityKind, Format, VerifyArgs};
use crate::distribution::{density_fn, norm_split};
use crate::output;
use crate::rng::SplitMix64;

/// Matsubara terms used by the cross-method checks (before extrapolation).
const SERIES_TERMS: usize = 100_000;

/// Result of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    /// Stable identifier of the check.
    pub name: &'static str,
    /// Number of comparisons that entered `worst`.
    pub cases: usize,
    /// Worst deviation measured across all cases.
    pub worst: f64,
    /// Bound `worst` must stay below (or at) to pass.
    pub tolerance: f64,
    /// Whether the check passed.
    pub passed: bool,
    /// Human-readable description of what was compared.
    pub detail: String,
}

impl CheckOutcome {
    fn from_worst(
        name: &'static str,
        cases: usize,
        worst: f64,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        CheckOutcome {
            name,
            cases,
            worst,
            tolerance,
            passed: worst.is_finite() && worst <= tolerance,
            detail: detail.into(),
        }
    }

    fn from_error(name: &'static str, tolerance: f64, err: &anyhow::Error) -> Self {
        CheckOutcome {
            name,
            cases: 0,
            worst: f64::INFINITY,
            tolerance,
            passed: false,
            detail: format!("aborted: {err:#}").replace(',', ";"),
        }
    }
}

/// Three-level Richardson extrapolation of a partial sum whose truncation
/// error expands as a/N + b/N² + O(1/N³); the result is exact through 1/N².
pub fn richardson(s_quarter: f64, s_half: f64, s_full: f64) -> f64 {
    let r1_full = 2.0 * s_full - s_half;
    let r1_half = 2.0 * s_half - s_quarter;
    (4.0 * r1_full - r1_half) / 3.0
}

fn extrapolated(
    series: &dyn Fn(usize) -> dqo_core::Result<EnergyResult>,
    terms: usize,
) -> dqo_core::Result<f64> {
    let quarter = series(terms / 4)?.beta_energy;
    let half = series(terms / 2)?.beta_energy;
    let full = series(terms)?.beta_energy;
    Ok(richardson(quarter, half, full))
}

fn rel_diff(value: f64, reference: f64) -> f64 {
    if !value.is_finite() || !reference.is_finite() {
        return f64::INFINITY;
    }
    (value - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
}

fn fold_worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, v| {
        if v.is_finite() {
            acc.max(v)
        } else {
            f64::INFINITY
        }
    })
}

/// Recover (γ, ω₀², ω_cut) from a pole triple via the exact pole–parameter
/// map and report the worst relative mismatch against the inputs.
pub fn inversion_roundtrip(seed: u64, cases: usize) -> CheckOutcome {
    const NAME: &str = "drude_inversion_roundtrip";
    const TOL: f64 = 1e-12;
    let mut rng = SplitMix64::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let gamma = rng.log_uniform(1e-6, 20.0);
        let omega_cut = rng.log_uniform(0.5, 1e4);
        let run = || -> Result<f64> {
            let sys = SystemSpec::new(1.0)?;
            let bath = BathSpec::drude(gamma, omega_cut)?;
            let p = invert_drude(&sys, &bath)?;
            let total = p.relax + p.damping;
            let gamma_back = p.damping * (p.relax * total + p.freq0 * p.freq0) / (total * total);
            let omega0_sq_back = p.freq0 * p.freq0 * p.relax / total;
            Ok(fold_worst([
                rel_diff(gamma_back, gamma),
                rel_diff(omega0_sq_back, 1.0),
                rel_diff(total, omega_cut),
            ]))
        };
        match run() {
            Ok(w) => worst = worst.max(w),
            Err(e) => return CheckOutcome::from_error(NAME, TOL, &e),
        }
    }
    CheckOutcome::from_worst(
        NAME,
        cases,
        worst,
        TOL,
        "bath parameters recovered from the pole triple match the inputs",
    )
}

/// Vieta identities of the pole triple: z₊ + z₋ = Γ, z₊·z₋ = Ω₀²,
/// Ω + z₊ + z₋ = ω_cut and Ω·z₊·z₋ = ω₀²·ω_cut.
pub fn pole_identities(seed: u64, cases: usize) -> CheckOutcome {
    const NAME: &str = "drude_pole_identities";
    const TOL: f64 = 1e-12;
    let mut rng = SplitMix64::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let gamma = rng.log_uniform(1e-6, 20.0);
        let omega_cut = rng.log_uniform(0.5, 1e4);
        let run = || -> Result<f64> {
            let sys = SystemSpec::new(1.0)?;
            let bath = BathSpec::drude(gamma, omega_cut)?;
            let p = invert_drude(&sys, &bath)?;
            let sum = p.pole_plus + p.pole_minus;
            let product = p.pole_plus * p.pole_minus;
            Ok(fold_worst([
                (sum - p.damping).norm() / p.damping,
                (product - p.freq0 * p.freq0).norm() / (p.freq0 * p.freq0),
                (sum + p.relax - omega_cut).norm() / omega_cut,
                (product * p.relax - omega_cut).norm() / omega_cut,
            ]))
        };
        match run() {
            Ok(w) => worst = worst.max(w),
            Err(e) => return CheckOutcome::from_error(NAME, TOL, &e),
        }
    }
    CheckOutcome::from_worst(
        NAME,
        cases,
        worst,
        TOL,
        "pole sums and products reproduce the cubic coefficients",
    )
}

struct DrawnModel {
    gamma: f64,
    omega_cut: f64,
    alpha: f64,
    omega_c: Option<f64>,
}

fn draw_models(seed: u64, sets: usize) -> Vec<DrawnModel> {
    let mut rng = SplitMix64::new(seed);
    (0..sets)
        .map(|i| {
            let gamma = rng.log_uniform(0.05, 5.0);
            let omega_cut = rng.log_uniform(2.0, 50.0);
            let alpha = rng.log_uniform(0.1, 10.0);
            let omega_c = if i % 2 == 1 {
                Some(rng.uniform(0.1, 10.0))
            } else {
                None
            };
            DrawnModel {
                gamma,
                omega_cut,
                alpha,
                omega_c,
            }
        })
        .collect()
}

fn build_model(d: &DrawnModel) -> Result<(SystemSpec, BathSpec, ThermalState)> {
    let mut sys = SystemSpec::new(1.0)?;
    if let Some(wc) = d.omega_c {
        sys = sys.with_cyclotron(wc)?;
    }
    let bath = BathSpec::drude(d.gamma, d.omega_cut)?;
    let state = ThermalState::from_alpha(d.alpha, &sys)?;
    Ok((sys, bath, state))
}

/// Richardson-extrapolated Matsubara sums against adaptive quadrature of the
/// spectral distributions, for the mean and internal energies in 1D and 3D.
pub fn series_vs_quadrature(seed: u64, sets: usize) -> CheckOutcome {
    const NAME: &str = "series_vs_quadrature";
    const TOL: f64 = 1e-6;
    let draws = draw_models(seed, sets);
    let per_set: Result<Vec<f64>> = draws
        .par_iter()
        .map(|d| -> Result<f64> {
            let (sys, bath, state) = build_model(d)?;
            let cfg = QuadratureConfig::default();
            let (series_mean, series_internal, quad_mean, quad_internal) =
                if d.omega_c.is_some() {
                    (
                        extrapolated(
                            &|n| matsubara::mean_energy_3d(&sys, &bath, &state, n),
                            SERIES_TERMS,
                        )?,
                        extrapolated(
                            &|n| matsubara::internal_energy_3d(&sys, &bath, &state, n),
                            SERIES_TERMS,
                        )?,
                        quadrature::mean_energy_3d_quad(&sys, &bath, &state, &cfg)?,
                        quadrature::internal_energy_3d_quad(&sys, &bath, &state, &cfg)?,
                    )
                } else {
                    (
                        extrapolated(
                            &|n| matsubara::mean_energy_1d(&sys, &bath, &state, n),
                            SERIES_TERMS,
                        )?,
                        extrapolated(
                            &|n| matsubara::internal_energy_1d(&sys, &bath, &state, n),
                            SERIES_TERMS,
                        )?,
                        quadrature::mean_energy_1d_quad(&sys, &bath, &state, &cfg)?,
                        quadrature::internal_energy_1d_quad(&sys, &bath, &state, &cfg)?,
                    )
                };
            Ok(fold_worst([
                rel_diff(series_mean, quad_mean),
                rel_diff(series_internal, quad_internal),
            ]))
        })
        .collect();
    match per_set {
        Ok(ws) => CheckOutcome::from_worst(
            NAME,
            2 * sets,
            fold_worst(ws),
            TOL,
            "extrapolated series and spectral quadrature agree on the mean and internal energies",
        ),
        Err(e) => CheckOutcome::from_error(NAME, TOL, &e),
    }
}

// The drawn model already alternates dimensionality (odd indices are 3D),
// so alternating the kind on a different stride covers all four combinations.
fn drawn_density(i: usize) -> DensityKind {
    if i % 4 < 2 {
        DensityKind::Mean
    } else {
        DensityKind::Internal
    }
}

/// ∫₀^∞ P(ω) dω = 1 for the mean- and internal-energy distributions.
pub fn distribution_norms(seed: u64, sets: usize) -> CheckOutcome {
    const NAME: &str = "distribution_norms";
    const TOL: f64 = 1e-8;
    let draws = draw_models(seed, sets);
    let per_set: Result<Vec<f64>> = draws
        .par_iter()
        .enumerate()
        .map(|(i, d)| -> Result<f64> {
            let (sys, bath, _) = build_model(d)?;
            let kind = drawn_density(i);
            let density = density_fn(&sys, &bath, d.omega_c.is_some(), kind)?;
            let cfg = QuadratureConfig::default();
            let norm = density_norm(&*density, norm_split(&bath), &cfg)?;
            Ok((norm - 1.0).abs())
        })
        .collect();
    match per_set {
        Ok(ws) => CheckOutcome::from_worst(
            NAME,
            sets,
            fold_worst(ws),
            TOL,
            "mean and internal spectral distributions integrate to one",
        ),
        Err(e) => CheckOutcome::from_error(NAME, TOL, &e),
    }
}

/// Pointwise non-negativity of all spectral distributions on a wide grid.
pub fn distribution_positivity(seed: u64, sets: usize) -> CheckOutcome {
    const NAME: &str = "distribution_positivity";
    const TOL: f64 = 1e-12;
    let grid: Vec<f64> = log_grid(1e-3, 1e3, 240);
    let draws = draw_models(seed, sets);
    let per_set: Result<Vec<f64>> = draws
        .par_iter()
        .enumerate()
        .map(|(i, d)| -> Result<f64> {
            let (sys, bath, _) = build_model(d)?;
            let kind = drawn_density(i);
            let density = density_fn(&sys, &bath, d.omega_c.is_some(), kind)?;
            let most_negative = grid
                .iter()
                .map(|&w| density(w))
                .fold(f64::INFINITY, f64::min);
            Ok((-most_negative).max(0.0))
        })
        .collect();
    match per_set {
        Ok(ws) => CheckOutcome::from_worst(
            NAME,
            sets * grid.len(),
            fold_worst(ws),
            TOL,
            "no sampled distribution value drops below zero",
        ),
        Err(e) => CheckOutcome::from_error(NAME, TOL, &e),
    }
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    let ratio = hi / lo;
    (0..points).map(|k| lo * ratio.powf(k as f64 / last)).collect()
}

/// Internal energy of an explicitly diagonalized 250-mode bath against the
/// Matsubara series at γ = ω₀, ω_cut = 10·ω₀, α = 1/2.
pub fn normal_mode_internal_energy() -> CheckOutcome {
    const NAME: &str = "normal_mode_internal_energy";
    const TOL: f64 = 1e-5;
    let run = || -> Result<f64> {
        let sys = SystemSpec::new(1.0)?;
        let bath = BathSpec::drude(1.0, 10.0)?;
        let state = ThermalState::from_alpha(0.5, &sys)?;
        let discrete = discretize_bath(&sys, &bath, 250, 500.0)?;
        let finite = internal_energy_finite_n(&sys, &discrete, &state);
        let series = matsubara::internal_energy_1d(&sys, &bath, &state, 10_000)?.beta_energy;
        Ok((finite - series).abs())
    };
    match run() {
        Ok(worst) => CheckOutcome::from_worst(
            NAME,
            1,
            worst,
            TOL,
            "250 exact normal modes reproduce the series internal energy",
        ),
        Err(e) => CheckOutcome::from_error(NAME, TOL, &e),
    }
}

/// At α = 10⁻⁴ every energy approaches the equipartition value (1 per
/// degree of freedom in β·energy units) regardless of coupling.
pub fn classical_limit() -> CheckOutcome {
    const NAME: &str = "classical_limit";
    const TOL: f64 = 1e-3;
    let run = || -> Result<f64> {
        let alpha = 1e-4;
        let mut worst: f64 = 0.0;

        let sys = SystemSpec::new(1.0)?;
        let bath = BathSpec::drude(1.0, 10.0)?;
        let state = ThermalState::from_alpha(alpha, &sys)?;
        for f in [
            matsubara::mean_energy_1d,
            matsubara::internal_energy_1d,
            matsubara::gibbs_energy_1d,
        ] {
            let v = extrapolated(&|n| f(&sys, &bath, &state, n), 10_000)?;
            worst = worst.max((v - 1.0).abs());
        }

        let sys3 = SystemSpec::new(1.0)?.with_cyclotron(5.0)?;
        let state3 = ThermalState::from_alpha(alpha, &sys3)?;
        for f in [
            matsubara::mean_energy_3d,
            matsubara::internal_energy_3d,
            matsubara::gibbs_energy_3d,
        ] {
            let v = extrapolated(&|n| f(&sys3, &bath, &state3, n), 10_000)?;
            worst = worst.max((v - 3.0).abs() / 3.0);
        }
        Ok(worst)
    };
    match run() {
        Ok(worst) => CheckOutcome::from_worst(
            NAME,
            6,
            worst,
            TOL,
            "all six energies reach equipartition at alpha = 1e-4",
        ),
        Err(e) => CheckOutcome::from_error(NAME, TOL, &e),
    }
}

/// At γ = 10⁻⁶ every 1D energy collapses onto the isolated-oscillator value
/// (α/2)·coth(α/2).
pub fn weak_coupling_limit() -> CheckOutcome {
    const NAME: &str = "weak_coupling_limit";
    const TOL: f64 = 1e-4;
    let run = || -> Result<f64> {
        let sys = SystemSpec::new(1.0)?;
        let bath = BathSpec::drude(1e-6, 10.0)?;
        let mut worst: f64 = 0.0;
        for alpha in [0.1, 0.5, 2.0, 7.5] {
            let state = ThermalState::from_alpha(alpha, &sys)?;
            let isolated = weak_coupling_energy(alpha);
            for f in [
                matsubara::mean_energy_1d,
                matsubara::internal_energy_1d,
                matsubara::gibbs_energy_1d,
            ] {
                let v = extrapolated(&|n| f(&sys, &bath, &state, n), 10_000)?;
                worst = worst.max((v - isolated).abs());
            }
        }
        Ok(worst)
    };
    match run() {
        Ok(worst) => CheckOutcome::from_worst(
            NAME,
            12,
            worst,
            TOL,
            "energies at gamma = 1e-6 match the isolated oscillator",
        ),
        Err(e) => CheckOutcome::from_error(NAME, TOL, &e),
    }
}

/// For ω_cut ≫ every other scale the Gibbs energy approaches the mean
/// energy (checked at ω_cut = 10⁴, γ = 0.01, α = 1/2).
pub fn large_cutoff_gibbs_matches_mean() -> CheckOutcome {
    const NAME: &str = "large_cutoff_gibbs_matches_mean";
    const TOL: f64 = 1e-3;
    let run = || -> Result<f64> {
        let sys = SystemSpec::new(1.0)?;
        let bath = BathSpec::drude(0.01, 1e4)?;
        let state = ThermalState::from_alpha(0.5, &sys)?;
        let mean = extrapolated(
            &|n| matsubara::mean_energy_1d(&sys, &bath, &state, n),
            SERIES_TERMS,
        )?;
        let gibbs = extrapolated(
            &|n| matsubara::gibbs_energy_1d(&sys, &bath, &state, n),
            SERIES_TERMS,
        )?;
        Ok((gibbs - mean).abs())
    };
    match run() {
        Ok(worst) => CheckOutcome::from_worst(
            NAME,
            1,
            worst,
            TOL,
            "Gibbs and mean energies coincide in the wide-band limit",
        ),
        Err(e) => CheckOutcome::from_error(NAME, TOL, &e),
    }
}

/// For a strictly Ohmic kernel the mean- and internal-energy distributions
/// are one and the same function; compare them pointwise on a wide grid.
pub fn ohmic_distributions_identical(seed: u64, sets: usize) -> CheckOutcome {
    const NAME: &str = "ohmic_mean_internal_distributions_identical";
    const TOL: f64 = 1e-12;
    let grid = log_grid(1e-3, 1e3, 240);
    let mut rng = SplitMix64::new(seed);
    let gammas: Vec<f64> = (0..sets).map(|_| rng.log_uniform(0.05, 5.0)).collect();
    let per_set: Result<Vec<f64>> = gammas
        .par_iter()
        .map(|&gamma| -> Result<f64> {
            let sys = SystemSpec::new(1.0)?;
            let bath = BathSpec::ohmic(gamma)?;
            Ok(fold_worst(grid.iter().map(|&w| {
                (spectral::p_e_1d(&sys, &bath, w) - spectral::p_u_log_derivative(&sys, &bath, w))
                    .abs()
            })))
        })
        .collect();
    match per_set {
        Ok(ws) => CheckOutcome::from_worst(
            NAME,
            sets * grid.len(),
            fold_worst(ws),
            TOL,
            "Ohmic mean and internal distributions coincide pointwise",
        ),
        Err(e) => CheckOutcome::from_error(NAME, TOL, &e),
    }
}

/// Capped quadrature of the (identical) Ohmic distributions must give the
/// same mean and internal energy.
pub fn ohmic_capped_routes_agree() -> CheckOutcome {
    const NAME: &str = "ohmic_capped_energy_routes_agree";
    const TOL: f64 = 1e-9;
    let run = || -> Result<f64> {
        // Tight per-integral tolerance leaves headroom below the check bound.
        let cfg = QuadratureConfig {
            rel_tol: 1e-11,
            ..QuadratureConfig::default()
        };
        let sys = SystemSpec::new(1.0)?;
        let mut worst: f64 = 0.0;
        for gamma in [0.2, 1.0, 3.0] {
            let bath = BathSpec::ohmic(gamma)?;
            for alpha in [0.5, 2.0] {
                let state = ThermalState::from_alpha(alpha, &sys)?;
                let mean = quadrature::mean_energy_1d_quad(&sys, &bath, &state, &cfg)?;
                let internal = quadrature::internal_energy_1d_quad(&sys, &bath, &state, &cfg)?;
                worst = worst.max(rel_diff(mean, internal));
            }
        }
        Ok(worst)
    };
    match run() {
        Ok(worst) => CheckOutcome::from_worst(
            NAME,
            6,
            worst,
            TOL,
            "capped mean- and internal-energy integrals agree for Ohmic friction",
        ),
        Err(e) => CheckOutcome::from_error(NAME, TOL, &e),
    }
}

/// The three Ohmic Matsubara series must refuse with the dedicated
/// divergence error rather than return a number.
pub fn ohmic_series_divergence_reported() -> CheckOutcome {
    const NAME: &str = "ohmic_series_divergence_reported";
    let run = || -> Result<f64> {
        let sys = SystemSpec::new(1.0)?;
        let bath = BathSpec::ohmic(0.5)?;
        let state = ThermalState::from_alpha(0.5, &sys)?;
        let outcomes = [
            matsubara::mean_energy_1d(&sys, &bath, &state, 100),
            matsubara::internal_energy_1d(&sys, &bath, &state, 100),
            matsubara::gibbs_energy_1d(&sys, &bath, &state, 100),
        ];
        let wrong = outcomes
            .iter()
            .filter(|r| !matches!(r, Err(Error::OhmicSeriesDivergent)))
            .count();
        Ok(wrong as f64)
    };
    match run() {
        Ok(worst) => CheckOutcome::from_worst(
            NAME,
            3,
            worst,
            0.0,
            "Ohmic series report their divergence instead of a value",
        ),
        Err(e) => CheckOutcome::from_error(NAME, 0.0, &e),
    }
}

/// The full Drude-kernel battery.
pub fn drude_battery(seed: u64, sets: usize) -> Vec<CheckOutcome> {
    vec![
        inversion_roundtrip(seed, 1000),
        pole_identities(seed.wrapping_add(1), 1000),
        series_vs_quadrature(seed.wrapping_add(2), sets),
        distribution_norms(seed.wrapping_add(3), 20),
        distribution_positivity(seed.wrapping_add(4), 20),
        normal_mode_internal_energy(),
        classical_limit(),
        weak_coupling_limit(),
        large_cutoff_gibbs_matches_mean(),
    ]
}

/// The strictly-Ohmic battery.
pub fn ohmic_battery(seed: u64, sets: usize) -> Vec<CheckOutcome> {
    vec![
        ohmic_distributions_identical(seed, sets),
        ohmic_capped_routes_agree(),
        ohmic_series_divergence_reported(),
    ]
}

#[derive(Debug, Serialize)]
struct VerifyDocument<'a> {
    command: &'static str,
    bath: &'static str,
    seed: u64,
    sets: usize,
    passed: bool,
    checks: &'a [CheckOutcome],
}

/// Run the selected battery; returns the rendered report and overall result.
pub fn run(args: &VerifyArgs) -> Result<(String, bool)> {
    let checks = match args.bath {
        BathKind::Drude => drude_battery(args.seed, args.sets),
        BathKind::Ohmic => ohmic_battery(args.seed, args.sets),
    };
    let passed = checks.iter().all(|c| c.passed);
    let rendered = render(args, &checks, passed)?;
    Ok((rendered, passed))
}

fn render(args: &VerifyArgs, checks: &[CheckOutcome], passed: bool) -> Result<String> {
    let bath = match args.bath {
        BathKind::Ohmic => "ohmic",
        BathKind::Drude => "drude",
    };
    match args.out.format {
        Format::Csv => {
            let mut s = String::new();
            s.push_str("# dqo verify\n");
            s.push_str(&format!(
                "# bath: {bath}, seed: {}, sets: {}\n",
                args.seed, args.sets
            ));
            s.push_str(&format!("# passed: {passed}\n"));
            s.push_str("name,cases,worst,tolerance,passed,detail\n");
            for c in checks {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    c.name,
                    c.cases,
                    output::machine(c.worst),
                    output::machine(c.tolerance),
                    c.passed,
                    c.detail.replace(',', ";"),
                ));
            }
            Ok(s)
        }
        Format::Json => {
            let doc = VerifyDocument {
                command: "verify",
                bath,
                seed: args.seed,
                sets: args.sets,
                passed,
                checks,
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        Format::Report => {
            let mut s = String::new();
            s.push_str(&format!(
                "verify  bath={bath} seed={} sets={}\n\n",
                args.seed, args.sets
            ));
            for c in checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!(
                    "[{status}] {:<44} cases={:<6} worst={} tol={}\n",
                    c.name,
                    c.cases,
                    output::pad(&output::human(c.worst), 12),
                    output::human(c.tolerance),
                ));
            }
            let failures = checks.iter().filter(|c| !c.passed).count();
            if passed {
                s.push_str(&format!("\nresult: PASS ({} checks)\n", checks.len()));
            } else {
                s.push_str(&format!(
                    "\nresult: FAIL ({failures} of {} checks failed)\n",
                    checks.len()
                ));
            }
            Ok(s)
        }
    }
}
