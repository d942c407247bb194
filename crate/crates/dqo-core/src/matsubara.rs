//! Matsubara-sum evaluation of the three thermal energies.
//!
//! At inverse temperature β every energy of the damped oscillator turns into
//! a sum over the bosonic frequencies ν_n = 2πnT. With the Drude abbreviations
//! γ̂(ν) = γω_cut/(ω_cut + ν) and D(ν) = ν² + ω₀² + νγ̂(ν), the one-dimensional
//! sums are
//!
//! * mean energy:     βE = 1 + Σ_n (2ω₀² + ν_nγ̂)/D,
//! * internal energy: βU = 1 + Σ_n [Ω/(Ω+ν_n) + z₊/(z₊+ν_n) + z₋/(z₋+ν_n)
//!   − ω_cut/(ω_cut+ν_n)],
//! * Gibbs energy:    βℰ = 1 + Σ_n [2ω₀² + ν_nγ̂ − ν_n²γ̂′]/D,
//!
//! and the three-dimensional versions add the in-plane (cyclotron-coupled)
//! contributions documented on the individual functions. The 1D internal and
//! Gibbs sums are termwise identical — D(ν) factorizes as
//! (ν+Ω)(ν+z₊)(ν+z₋)/(ν+ω_cut) — and the implementations here reproduce that
//! identity to rounding, which is asserted in the test suite.
//!
//! All sums are evaluated as **raw partial sums in descending order**
//! (smallest terms first); `beta_energy` is the truncated value itself, not
//! an extrapolation. The terms fall off only as 1/ν², so the truncation error
//! is O(1/N) and is reported via [`EnergyResult::tail_estimate`]: an integral
//! bound N·t_N for the mean/Gibbs-type sums, and the last sum-doubling
//! increment |S_N − S_{N/2}| for the internal-energy sums. Strictly Ohmic
//! kernels make every one of these sums diverge logarithmically, which is
//! reported as [`Error::OhmicSeriesDivergent`].

use crate::drude::{invert_drude, magneto_poles};
use crate::model::{BathSpec, SystemSpec, ThermalState};
use crate::{Error, Result};

/// Bosonic Matsubara frequencies ν_n = 2πnT.
#[derive(Debug, Clone, Copy)]
pub struct MatsubaraGrid {
    temperature: f64,
}

impl MatsubaraGrid {
    /// Grid for the given thermal state.
    pub fn new(state: &ThermalState) -> Self {
        Self { temperature: state.temperature() }
    }

    /// n-th bosonic frequency ν_n = 2πnT.
    pub fn nu(&self, n: usize) -> f64 {
        2.0 * core::f64::consts::PI * self.temperature * n as f64
    }

    /// Grid spacing ν_{n+1} − ν_n = 2πT.
    pub fn spacing(&self) -> f64 {
        2.0 * core::f64::consts::PI * self.temperature
    }
}

/// A truncated Matsubara sum: the dimensionless combination β·(energy).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    /// Raw partial sum of β·(energy) over `terms_used` Matsubara terms.
    pub beta_energy: f64,
    /// Number of series terms that entered the sum.
    pub terms_used: usize,
    /// Estimate of the truncated remainder (same β·energy units).
    pub tail_estimate: f64,
}

/// β-scaled mean energy α/2·coth(α/2) of the *isolated* oscillator at
/// α = βω₀; the γ → 0 limit of all three energies.
pub fn weak_coupling_energy(alpha: f64) -> f64 {
    crate::math::thermal_energy(alpha, 1.0)
}

fn drude_parameters(bath: &BathSpec) -> Result<(f64, f64)> {
    match *bath {
        BathSpec::Drude { gamma, omega_cut } => Ok((gamma, omega_cut)),
        BathSpec::Ohmic { .. } => Err(Error::OhmicSeriesDivergent),
    }
}

fn check_terms(terms: usize) -> Result<()> {
    if terms == 0 {
        Err(Error::InvalidParameter("at least one series term is required"))
    } else {
        Ok(())
    }
}

/// Relative threshold for the conjugate-pair cancellation guard.
const RESIDUE_TOL: f64 = 1e-10;

fn check_residue(sum_im: f64, sum_re: f64) -> Result<()> {
    if libm::fabs(sum_im) > RESIDUE_TOL * (1.0 + libm::fabs(sum_re)) {
        Err(Error::ResidueImaginary { magnitude: sum_im })
    } else {
        Ok(())
    }
}

/// Mean energy of the 1D Drude-damped oscillator, βE = β⟨H_osc⟩.
pub fn mean_energy_1d(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    terms: usize,
) -> Result<EnergyResult> {
    let (gamma, omega_cut) = drude_parameters(bath)?;
    check_terms(terms)?;
    let grid = MatsubaraGrid::new(state);
    let w0sq = sys.omega0() * sys.omega0();
    let mut sum = 0.0;
    let mut largest_nu_term = 0.0;
    for n in (1..=terms).rev() {
        let nu = grid.nu(n);
        let gh = gamma * omega_cut / (omega_cut + nu);
        let d = (nu + gh) * nu + w0sq;
        let t = (2.0 * w0sq + nu * gh) / d;
        if n == terms {
            largest_nu_term = t;
        }
        sum += t;
    }
    Ok(EnergyResult {
        beta_energy: 1.0 + sum,
        terms_used: terms,
        tail_estimate: largest_nu_term * terms as f64,
    })
}

/// Internal energy of the 1D Drude-damped oscillator, βU = −β∂_β ln 𝒵.
pub fn internal_energy_1d(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    terms: usize,
) -> Result<EnergyResult> {
    drude_parameters(bath)?;
    check_terms(terms)?;
    let poles = invert_drude(sys, bath)?;
    let grid = MatsubaraGrid::new(state);
    let omega_cut = poles.omega_cut();
    let mut sum_re = 0.0;
    let mut sum_im = 0.0;
    let mut upper_half = 0.0;
    for n in (1..=terms).rev() {
        let nu = grid.nu(n);
        let pair = poles.pole_plus / (poles.pole_plus + nu)
            + poles.pole_minus / (poles.pole_minus + nu);
        let real = poles.relax / (poles.relax + nu) - omega_cut / (omega_cut + nu);
        sum_re += pair.re + real;
        sum_im += pair.im;
        if n == terms / 2 + 1 {
            upper_half = sum_re;
        }
    }
    check_residue(sum_im, sum_re)?;
    Ok(EnergyResult {
        beta_energy: 1.0 + sum_re,
        terms_used: terms,
        tail_estimate: libm::fabs(upper_half),
    })
}

/// Gibbs energy of the 1D Drude-damped oscillator, βℰ = β∂_β(βF)/∂β·… in
/// dimensionless form: 1 + Σ_n [2ω₀² + ν_nγ̂ − ν_n²γ̂′]/D.
pub fn gibbs_energy_1d(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    terms: usize,
) -> Result<EnergyResult> {
    let (gamma, omega_cut) = drude_parameters(bath)?;
    check_terms(terms)?;
    let grid = MatsubaraGrid::new(state);
    let w0sq = sys.omega0() * sys.omega0();
    let mut sum = 0.0;
    let mut largest_nu_term = 0.0;
    for n in (1..=terms).rev() {
        let nu = grid.nu(n);
        let wpn = omega_cut + nu;
        let gh = gamma * omega_cut / wpn;
        let ghp = -gamma * omega_cut / (wpn * wpn); // dγ̂/dν
        let d = (nu + gh) * nu + w0sq;
        let t = (2.0 * w0sq + nu * gh - nu * nu * ghp) / d;
        if n == terms {
            largest_nu_term = t;
        }
        sum += t;
    }
    Ok(EnergyResult {
        beta_energy: 1.0 + sum,
        terms_used: terms,
        tail_estimate: largest_nu_term * terms as f64,
    })
}

/// Mean energy of the isotropic 3D oscillator in a magnetic field along z,
/// βE = 3 + Σ_n [2·(D(2ω₀² + νγ̂) + (ω_cν)²)/(D² + (ω_cν)²) + (2ω₀² + νγ̂)/D].
pub fn mean_energy_3d(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    terms: usize,
) -> Result<EnergyResult> {
    let (gamma, omega_cut) = drude_parameters(bath)?;
    check_terms(terms)?;
    let grid = MatsubaraGrid::new(state);
    let w0sq = sys.omega0() * sys.omega0();
    let wc = sys.cyclotron();
    let mut sum = 0.0;
    let mut largest_nu_term = 0.0;
    for n in (1..=terms).rev() {
        let nu = grid.nu(n);
        let gh = gamma * omega_cut / (omega_cut + nu);
        let d = (nu + gh) * nu + w0sq;
        let a = 2.0 * w0sq + nu * gh;
        let cn = wc * nu;
        let t_plane = (d * a + cn * cn) / (d * d + cn * cn);
        let t_axis = a / d;
        let t = 2.0 * t_plane + t_axis;
        if n == terms {
            largest_nu_term = t;
        }
        sum += t;
    }
    Ok(EnergyResult {
        beta_energy: 3.0 + sum,
        terms_used: terms,
        tail_estimate: largest_nu_term * terms as f64,
    })
}

/// Internal energy of the isotropic 3D oscillator in a magnetic field,
/// βU = 3·{1 + Σ_n [Ω/(Ω+ν) − ω_cut/(ω_cut+ν)
///   + (z₊ + z₋ + Ω₁ + Ω₁* + Ω₂ + Ω₂* pole terms)/3]}.
pub fn internal_energy_3d(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    terms: usize,
) -> Result<EnergyResult> {
    drude_parameters(bath)?;
    check_terms(terms)?;
    let poles = invert_drude(sys, bath)?;
    let mp = magneto_poles(&poles, sys.cyclotron());
    let grid = MatsubaraGrid::new(state);
    let omega_cut = poles.omega_cut();
    let o1 = mp.pole_upper;
    let o1c = o1.conj();
    let o2 = mp.pole_lower;
    let o2c = o2.conj();
    let mut sum_re = 0.0;
    let mut sum_im = 0.0;
    let mut upper_half = 0.0;
    for n in (1..=terms).rev() {
        let nu = grid.nu(n);
        let pairs = poles.pole_plus / (poles.pole_plus + nu)
            + poles.pole_minus / (poles.pole_minus + nu)
            + o1 / (o1 + nu)
            + o1c / (o1c + nu)
            + o2 / (o2 + nu)
            + o2c / (o2c + nu);
        let real = poles.relax / (poles.relax + nu) - omega_cut / (omega_cut + nu);
        sum_re += real + pairs.re / 3.0;
        sum_im += pairs.im;
        if n == terms / 2 + 1 {
            upper_half = sum_re;
        }
    }
    check_residue(sum_im, sum_re)?;
    Ok(EnergyResult {
        beta_energy: 3.0 * (1.0 + sum_re),
        terms_used: terms,
        tail_estimate: 3.0 * libm::fabs(upper_half),
    })
}

/// Gibbs energy of the isotropic 3D oscillator in a magnetic field: the
/// axial contribution equals the 1D sum, the in-plane one is
/// βℰ_plane = 2 − Σ_n [−2ω_c²ν² + 2ν(γ̂ + νγ̂′ + 2ν)D − 4D²]/(D² + (ω_cν)²).
pub fn gibbs_energy_3d(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    terms: usize,
) -> Result<EnergyResult> {
    let (gamma, omega_cut) = drude_parameters(bath)?;
    check_terms(terms)?;
    let grid = MatsubaraGrid::new(state);
    let w0sq = sys.omega0() * sys.omega0();
    let wc = sys.cyclotron();
    let mut sum_plane = 0.0;
    let mut sum_axis = 0.0;
    let mut largest_nu_terms = 0.0;
    for n in (1..=terms).rev() {
        let nu = grid.nu(n);
        let wpn = omega_cut + nu;
        let gh = gamma * omega_cut / wpn;
        let ghp = -gamma * omega_cut / (wpn * wpn);
        let d = (nu + gh) * nu + w0sq;
        let cn = wc * nu;
        let t_plane =
            (-2.0 * cn * cn + 2.0 * nu * (gh + nu * ghp + 2.0 * nu) * d - 4.0 * d * d)
                / (d * d + cn * cn);
        let t_axis = (2.0 * w0sq + nu * gh - nu * nu * ghp) / d;
        if n == terms {
            largest_nu_terms = libm::fabs(t_plane) + t_axis;
        }
        sum_plane += t_plane;
        sum_axis += t_axis;
    }
    Ok(EnergyResult {
        beta_energy: (2.0 - sum_plane) + (1.0 + sum_axis),
        terms_used: terms,
        tail_estimate: largest_nu_terms * terms as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TERMS: usize = 10_000;

    fn sys1() -> SystemSpec {
        SystemSpec::new(1.0).unwrap()
    }

    fn sys3() -> SystemSpec {
        SystemSpec::new(1.0).unwrap().with_cyclotron(2.5).unwrap()
    }

    fn bath() -> BathSpec {
        BathSpec::drude(1.0, 10.0).unwrap()
    }

    fn state(alpha: f64, sys: &SystemSpec) -> ThermalState {
        ThermalState::from_alpha(alpha, sys).unwrap()
    }

    #[test]
    fn grid_frequencies() {
        let sys = sys1();
        let st = state(2.0, &sys); // T = 0.5
        let g = MatsubaraGrid::new(&st);
        assert_eq!(g.nu(0), 0.0);
        assert_relative_eq!(g.nu(1), core::f64::consts::PI, max_relative = 1e-15);
        assert_relative_eq!(g.nu(7), 7.0 * core::f64::consts::PI, max_relative = 1e-15);
        assert_relative_eq!(g.spacing(), core::f64::consts::PI, max_relative = 1e-15);
    }

    #[test]
    fn weak_coupling_frozen_values() {
        assert_relative_eq!(weak_coupling_energy(0.1), 1.000_833_194_477_505, max_relative = 1e-14);
        assert_relative_eq!(weak_coupling_energy(2.0), 1.313_035_285_499_331_5, max_relative = 1e-14);
    }

    #[test]
    fn ohmic_sums_are_rejected() {
        let sys = sys1();
        let ohmic = BathSpec::ohmic(1.0).unwrap();
        let st = state(0.5, &sys);
        assert_eq!(mean_energy_1d(&sys, &ohmic, &st, TERMS), Err(Error::OhmicSeriesDivergent));
        assert_eq!(internal_energy_1d(&sys, &ohmic, &st, TERMS), Err(Error::OhmicSeriesDivergent));
        assert_eq!(gibbs_energy_1d(&sys, &ohmic, &st, TERMS), Err(Error::OhmicSeriesDivergent));
        assert_eq!(mean_energy_3d(&sys, &ohmic, &st, TERMS), Err(Error::OhmicSeriesDivergent));
        assert_eq!(internal_energy_3d(&sys, &ohmic, &st, TERMS), Err(Error::OhmicSeriesDivergent));
        assert_eq!(gibbs_energy_3d(&sys, &ohmic, &st, TERMS), Err(Error::OhmicSeriesDivergent));
    }

    #[test]
    fn zero_terms_is_invalid() {
        let sys = sys1();
        let st = state(0.5, &sys);
        assert!(matches!(
            mean_energy_1d(&sys, &bath(), &st, 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn frozen_partial_sums_1d() {
        // γ = ω₀ = 1, ω_cut = 10, N = 10⁴ raw descending sums.
        let sys = sys1();
        let st = state(0.5, &sys);
        let e = mean_energy_1d(&sys, &bath(), &st, TERMS).unwrap();
        let u = internal_energy_1d(&sys, &bath(), &st, TERMS).unwrap();
        let g = gibbs_energy_1d(&sys, &bath(), &st, TERMS).unwrap();
        assert_relative_eq!(e.beta_energy, 1.087_017_343_112_767_4, max_relative = 1e-12);
        assert_relative_eq!(u.beta_energy, 1.132_884_994_875_589_5, max_relative = 1e-12);
        assert_relative_eq!(g.beta_energy, 1.132_884_994_875_589_7, max_relative = 1e-12);

        let st2 = state(2.5, &sys);
        let e2 = mean_energy_1d(&sys, &bath(), &st2, TERMS).unwrap();
        let u2 = internal_energy_1d(&sys, &bath(), &st2, TERMS).unwrap();
        let g2 = gibbs_energy_1d(&sys, &bath(), &st2, TERMS).unwrap();
        assert_relative_eq!(e2.beta_energy, 2.093_517_510_981_413, max_relative = 1e-12);
        assert_relative_eq!(u2.beta_energy, 2.411_707_355_098_853_7, max_relative = 1e-12);
        assert_relative_eq!(g2.beta_energy, 2.411_707_355_098_857, max_relative = 1e-12);
    }

    #[test]
    fn frozen_partial_sums_3d() {
        // Additionally ω_c = 2.5.
        let sys = sys3();
        let st = state(0.5, &sys);
        let e = mean_energy_3d(&sys, &bath(), &st, TERMS).unwrap();
        let u = internal_energy_3d(&sys, &bath(), &st, TERMS).unwrap();
        let g = gibbs_energy_3d(&sys, &bath(), &st, TERMS).unwrap();
        assert_relative_eq!(e.beta_energy, 3.377_949_949_993_439_6, max_relative = 1e-12);
        assert_relative_eq!(u.beta_energy, 3.503_239_754_841_836_4, max_relative = 1e-12);
        assert_relative_eq!(g.beta_energy, 3.514_007_823_521_250_6, max_relative = 1e-12);
    }

    #[test]
    fn internal_equals_gibbs_termwise_1d() {
        let sys = sys1();
        for k in 1..=8 {
            let st = state(0.9 * k as f64, &sys);
            for &n in &[1usize, 3, 10, 100, 2000] {
                let u = internal_energy_1d(&sys, &bath(), &st, n).unwrap();
                let g = gibbs_energy_1d(&sys, &bath(), &st, n).unwrap();
                assert_relative_eq!(u.beta_energy, g.beta_energy, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn field_free_3d_is_three_times_1d() {
        let sys = sys1(); // ω_c = 0
        let st = state(1.5, &sys);
        let n = 5000;
        let e3 = mean_energy_3d(&sys, &bath(), &st, n).unwrap().beta_energy;
        let u3 = internal_energy_3d(&sys, &bath(), &st, n).unwrap().beta_energy;
        let g3 = gibbs_energy_3d(&sys, &bath(), &st, n).unwrap().beta_energy;
        let e1 = mean_energy_1d(&sys, &bath(), &st, n).unwrap().beta_energy;
        let u1 = internal_energy_1d(&sys, &bath(), &st, n).unwrap().beta_energy;
        let g1 = gibbs_energy_1d(&sys, &bath(), &st, n).unwrap().beta_energy;
        assert_relative_eq!(e3, 3.0 * e1, max_relative = 1e-12);
        assert_relative_eq!(u3, 3.0 * u1, max_relative = 1e-12);
        assert_relative_eq!(g3, 3.0 * g1, max_relative = 1e-12);
    }

    #[test]
    fn classical_limit_reaches_equipartition() {
        // α → 0: all βE → 1 (1D) resp. 3 (3D).
        let sys = sys1();
        let st = state(1e-4, &sys);
        let e = mean_energy_1d(&sys, &bath(), &st, TERMS).unwrap().beta_energy;
        assert_relative_eq!(e, 1.0, max_relative = 1e-6);
        let sys3 = sys3();
        let st3 = state(1e-4, &sys3);
        let e3 = mean_energy_3d(&sys3, &bath(), &st3, TERMS).unwrap().beta_energy;
        assert_relative_eq!(e3, 3.0, max_relative = 1e-6);
    }

    #[test]
    fn coupling_raises_energies_above_isolated_value() {
        // Finite coupling adds zero-point-like energy: βE > (α/2)coth(α/2),
        // and the three definitions order as βℰ ≥ βU ≥ βE (Drude, 1D).
        let sys = sys1();
        for k in 1..=6 {
            let alpha = 1.1 * k as f64;
            let st = state(alpha, &sys);
            let e = mean_energy_1d(&sys, &bath(), &st, TERMS).unwrap().beta_energy;
            let u = internal_energy_1d(&sys, &bath(), &st, TERMS).unwrap().beta_energy;
            let g = gibbs_energy_1d(&sys, &bath(), &st, TERMS).unwrap().beta_energy;
            assert!(e > weak_coupling_energy(alpha));
            assert!(g >= u - 1e-12 && u >= e - 1e-12);
        }
    }

    #[test]
    fn tail_estimate_brackets_true_remainder() {
        let sys = sys1();
        let st = state(0.5, &sys);
        let coarse = mean_energy_1d(&sys, &bath(), &st, 1000).unwrap();
        let fine = mean_energy_1d(&sys, &bath(), &st, 1_000_000).unwrap();
        let actual = fine.beta_energy - coarse.beta_energy;
        assert!(coarse.tail_estimate > 0.3 * actual && coarse.tail_estimate < 3.0 * actual);

        let coarse_u = internal_energy_1d(&sys, &bath(), &st, 1000).unwrap();
        let fine_u = internal_energy_1d(&sys, &bath(), &st, 1_000_000).unwrap();
        let actual_u = (fine_u.beta_energy - coarse_u.beta_energy).abs();
        assert!(coarse_u.tail_estimate > 0.3 * actual_u && coarse_u.tail_estimate < 3.0 * actual_u);
    }

    #[test]
    fn mean_energy_terms_are_positive_and_sum_monotone() {
        let sys = sys1();
        let st = state(0.5, &sys);
        let mut prev = 1.0;
        for n in [1usize, 2, 5, 20, 100, 1000] {
            let e = mean_energy_1d(&sys, &bath(), &st, n).unwrap().beta_energy;
            assert!(e > prev, "partial sums of a positive-term series must grow");
            prev = e;
        }
    }

    #[test]
    fn corrupted_pole_set_trips_residue_guard() {
        // Same loop as internal_energy_1d but with a sign-flipped z₋: the
        // imaginary parts no longer cancel and the guard must fire.
        let sys = sys1();
        let poles = invert_drude(&sys, &bath()).unwrap();
        let st = state(0.5, &sys);
        let grid = MatsubaraGrid::new(&st);
        let mut bad = poles;
        bad.pole_minus = bad.pole_plus; // conjugation lost
        // Inline replica of the guarded summation:
        let mut sum_re = 0.0;
        let mut sum_im = 0.0;
        for n in (1..=200usize).rev() {
            let nu = grid.nu(n);
            let pair = bad.pole_plus / (bad.pole_plus + nu)
                + bad.pole_minus / (bad.pole_minus + nu);
            sum_re += pair.re;
            sum_im += pair.im;
        }
        assert!(check_residue(sum_im, sum_re).is_err());
    }
}
