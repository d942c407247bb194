//! Cross-module consistency checks.
//!
//! Each test ties at least two independent computational routes to the same
//! quantity: closed-form spectral weights against numerical phase slopes of
//! the response, pole algebra against the defining cubic relations, and the
//! Matsubara series against their structural identities. Randomized cases
//! use proptest with moderate budgets; every check is cheap.

use dqo_core::drude::{invert_drude, magneto_poles};
use dqo_core::matsubara::{gibbs_energy_1d, internal_energy_1d, internal_energy_3d, mean_energy_1d, mean_energy_3d};
use dqo_core::model::{dynamic_stiffness, susceptibility_1d, BathSpec, SystemSpec, ThermalState};
use dqo_core::quadrature::{integrate, QuadratureConfig};
use dqo_core::spectral;
use proptest::prelude::*;

const FRAC_1_PI: f64 = core::f64::consts::FRAC_1_PI;

/// Centred difference of the response phase, d(arg λ)/dω. The phase stays on
/// one branch for ω > 0 because Im λ = −ω·Re μ̃ < 0 pins λ to the lower
/// half-plane.
fn phase_slope(sys: &SystemSpec, bath: &BathSpec, omega: f64, h: f64) -> f64 {
    let above = dynamic_stiffness(sys, bath, omega + h);
    let below = dynamic_stiffness(sys, bath, omega - h);
    (above.arg() - below.arg()) / (2.0 * h)
}

/// The pole-sum internal-energy weight must reproduce −(1/π)·d(arg λ)/dω,
/// measured here by finite differences of the response phase — a route that
/// never sees the pole decomposition.
#[test]
fn internal_energy_weight_matches_numeric_phase_slope() {
    let h = 1e-6;
    for &(gamma, omega_cut) in &[(1.0, 10.0), (0.3, 4.0), (2.0, 25.0)] {
        let sys = SystemSpec::new(1.0).unwrap();
        let bath = BathSpec::drude(gamma, omega_cut).unwrap();
        let poles = invert_drude(&sys, &bath).unwrap();
        for &w in &[0.3, 0.7, 1.3, 2.0, 5.0, 9.0] {
            let slope = -FRAC_1_PI * phase_slope(&sys, &bath, w, h);
            let closed = spectral::p_u_1d(&poles, w);
            assert!(
                (slope - closed).abs() <= 1e-8 * (1.0 + closed.abs()),
                "γ={gamma} ω_cut={omega_cut} ω={w}: slope {slope} vs pole sum {closed}"
            );
        }
    }
}

/// For strictly Ohmic damping the mean-energy weight *is* the phase-slope
/// weight; check the closed form against the same finite-difference oracle.
#[test]
fn ohmic_mean_energy_weight_matches_numeric_phase_slope() {
    let h = 1e-6;
    for &gamma in &[0.2, 0.5, 1.5] {
        let sys = SystemSpec::new(1.0).unwrap();
        let bath = BathSpec::ohmic(gamma).unwrap();
        for &w in &[0.4, 0.9, 1.1, 3.0, 8.0] {
            let slope = -FRAC_1_PI * phase_slope(&sys, &bath, w, h);
            let closed = spectral::p_e_1d(&sys, &bath, w);
            assert!(
                (slope - closed).abs() <= 1e-8 * (1.0 + closed.abs()),
                "γ={gamma} ω={w}: slope {slope} vs closed form {closed}"
            );
        }
    }
}

/// As γ → 0 the mean-energy distribution concentrates into a narrow line at
/// ω₀: a window of ±0.1·ω₀ captures essentially all of the unit norm.
#[test]
fn weak_coupling_distribution_concentrates_at_resonance() {
    let sys = SystemSpec::new(1.0).unwrap();
    let bath = BathSpec::drude(1e-4, 10.0).unwrap();
    let cfg = QuadratureConfig::default();
    let f = move |w: f64| spectral::p_e_1d(&sys, &bath, w);
    let q = integrate(&f, 0.9, 1.1, &cfg).unwrap();
    assert!(
        q.value > 0.995 && q.value <= 1.0 + 1e-6,
        "window mass {} should be ≈ 1",
        q.value
    );
}

fn decade(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.log10()..hi.log10()).prop_map(|x| 10f64.powf(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Rate extraction must invert the forward map to near machine accuracy
    /// over a wide parameter range, and the extracted rates must satisfy
    /// their defining algebraic relations.
    #[test]
    fn drude_inversion_roundtrips(
        gamma in decade(1e-6, 20.0),
        omega_cut in decade(0.5, 1e4),
        omega0 in decade(0.1, 10.0),
    ) {
        let sys = SystemSpec::new(omega0).unwrap();
        let bath = BathSpec::drude(gamma, omega_cut).unwrap();
        let p = invert_drude(&sys, &bath).unwrap();

        let (g, w0, wc) = p.recovered_parameters();
        prop_assert!((g - gamma).abs() <= 1e-11 * gamma);
        prop_assert!((w0 - omega0).abs() <= 1e-11 * omega0);
        prop_assert!((wc - omega_cut).abs() <= 1e-11 * omega_cut);

        prop_assert!(p.damping > 0.0 && p.damping < omega_cut);
        prop_assert!(p.relax > 0.0 && p.relax < omega_cut);
        prop_assert!(p.pole_plus.re > 0.0 && p.pole_minus.re > 0.0);

        let sum = p.pole_plus + p.pole_minus;
        let prod = p.pole_plus * p.pole_minus;
        prop_assert!((sum.re - p.damping).abs() <= 1e-13 * p.damping);
        prop_assert!(sum.im.abs() <= 1e-13 * p.damping);
        prop_assert!((prod.re - p.freq0 * p.freq0).abs() <= 1e-13 * p.freq0 * p.freq0);
        prop_assert!(prod.im.abs() <= 1e-13 * p.freq0 * p.freq0);
    }

    /// The magneto-split pair must solve z² − (Γ − iω_c)z + Ω₀² = 0: checked
    /// through the root sum and product, plus passivity of the slow root.
    #[test]
    fn magneto_pair_invariants(
        gamma in decade(0.05, 5.0),
        omega_cut in decade(2.0, 100.0),
        cyclotron in 0.0f64..25.0,
    ) {
        let sys = SystemSpec::new(1.0).unwrap();
        let bath = BathSpec::drude(gamma, omega_cut).unwrap();
        let p = invert_drude(&sys, &bath).unwrap();
        let mp = magneto_poles(&p, cyclotron);

        let sum = mp.pole_upper + mp.pole_lower;
        let prod = mp.pole_upper * mp.pole_lower;
        let scale = p.damping + cyclotron;
        prop_assert!((sum.re - p.damping).abs() <= 1e-12 * scale);
        prop_assert!((sum.im + cyclotron).abs() <= 1e-12 * scale);
        prop_assert!((prod.re - p.freq0 * p.freq0).abs() <= 1e-11 * p.freq0 * p.freq0);
        prop_assert!(prod.im.abs() <= 1e-11 * p.freq0 * p.freq0);
        prop_assert!(mp.pole_lower.re > 0.0);
        prop_assert!(mp.pole_upper.re >= mp.pole_lower.re);
    }

    /// Response reciprocity χ·λ = 1 and the reality condition
    /// λ(−ω) = λ(ω)* hold for both kernels at any frequency.
    #[test]
    fn stiffness_reciprocity_and_reality(
        gamma in decade(0.01, 10.0),
        omega in -50.0f64..50.0,
        drude in any::<bool>(),
    ) {
        let sys = SystemSpec::new(1.0).unwrap();
        let bath = if drude {
            BathSpec::drude(gamma, 10.0).unwrap()
        } else {
            BathSpec::ohmic(gamma).unwrap()
        };
        let lam = dynamic_stiffness(&sys, &bath, omega);
        let chi = susceptibility_1d(&sys, &bath, omega).unwrap();
        let unit = lam * chi;
        prop_assert!((unit.re - 1.0).abs() <= 1e-12);
        prop_assert!(unit.im.abs() <= 1e-12);

        let mirrored = dynamic_stiffness(&sys, &bath, -omega);
        let scale = lam.norm();
        prop_assert!((mirrored.re - lam.re).abs() <= 1e-15 * scale);
        prop_assert!((mirrored.im + lam.im).abs() <= 1e-15 * scale);
    }

    /// Every spectral weight stays non-negative over the physical range.
    #[test]
    fn distributions_are_nonnegative(
        gamma in decade(0.05, 5.0),
        omega_cut in decade(2.0, 100.0),
        cyclotron in 0.0f64..10.0,
        omega in 0.0f64..60.0,
    ) {
        let sys1 = SystemSpec::new(1.0).unwrap();
        let sys3 = SystemSpec::new(1.0).unwrap().with_cyclotron(cyclotron).unwrap();
        let bath = BathSpec::drude(gamma, omega_cut).unwrap();
        let poles = invert_drude(&sys1, &bath).unwrap();
        let mp = magneto_poles(&poles, cyclotron);

        prop_assert!(spectral::p_e_1d(&sys1, &bath, omega) >= -1e-12);
        prop_assert!(spectral::p_u_1d(&poles, omega) >= -1e-12);
        prop_assert!(spectral::p_e_3d(&sys3, &bath, omega) >= -1e-12);
        prop_assert!(spectral::p_u_3d(&poles, &mp, omega) >= -1e-12);
    }

    /// In one dimension the internal and Gibbs series agree term by term, so
    /// any truncation of the two must coincide to rounding.
    #[test]
    fn internal_and_gibbs_coincide_in_1d(
        gamma in decade(0.05, 5.0),
        omega_cut in decade(2.0, 100.0),
        alpha in decade(0.05, 8.0),
    ) {
        let sys = SystemSpec::new(1.0).unwrap();
        let bath = BathSpec::drude(gamma, omega_cut).unwrap();
        let state = ThermalState::from_alpha(alpha, &sys).unwrap();
        let u = internal_energy_1d(&sys, &bath, &state, 300).unwrap();
        let g = gibbs_energy_1d(&sys, &bath, &state, 300).unwrap();
        prop_assert!(
            (u.beta_energy - g.beta_energy).abs() <= 1e-12 * u.beta_energy.abs()
        );
    }

    /// At zero field each 3D series is exactly three times its 1D partner.
    #[test]
    fn field_free_3d_series_triple_the_1d_series(
        gamma in decade(0.05, 5.0),
        omega_cut in decade(2.0, 100.0),
        alpha in decade(0.05, 8.0),
    ) {
        let sys1 = SystemSpec::new(1.0).unwrap();
        let sys3 = SystemSpec::new(1.0).unwrap().with_cyclotron(0.0).unwrap();
        let bath = BathSpec::drude(gamma, omega_cut).unwrap();
        let state = ThermalState::from_alpha(alpha, &sys1).unwrap();

        let pairs = [
            (mean_energy_3d(&sys3, &bath, &state, 200).unwrap(),
             mean_energy_1d(&sys1, &bath, &state, 200).unwrap()),
            (internal_energy_3d(&sys3, &bath, &state, 200).unwrap(),
             internal_energy_1d(&sys1, &bath, &state, 200).unwrap()),
        ];
        for (three_d, one_d) in pairs {
            prop_assert!(
                (three_d.beta_energy - 3.0 * one_d.beta_energy).abs()
                    <= 1e-12 * three_d.beta_energy.abs()
            );
        }
    }
}
