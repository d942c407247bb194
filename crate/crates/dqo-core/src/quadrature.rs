//! Adaptive Gauss–Kronrod quadrature and the integral route to the energies.
//!
//! The workhorse is a 15-point Kronrod rule (7-point Gauss core) inside a
//! globally adaptive driver: the interval with the largest error estimate is
//! bisected until the summed estimate meets the relative tolerance or the
//! interval budget runs out. Semi-infinite integrals are split at a finite
//! `split_point` and the remainder is folded to (0, 1/split] by ω → 1/ω.
//!
//! Energy integrals evaluate β·∫ ε(ω, T)·P(ω) dω against the distributions of
//! [`crate::spectral`]. For a strictly Ohmic kernel the mean- and
//! internal-energy integrals diverge logarithmically; they are therefore
//! integrated only up to the documented cap
//! [`QuadratureConfig::ohmic_cap_factor`]·ω₀, which regularizes both routes
//! with the *same* cutoff so that their exact pointwise equality
//! P_E ≡ P_U survives regularization.

use alloc::vec::Vec;

use crate::drude::{invert_drude, magneto_poles};
use crate::math::thermal_energy;
use crate::model::{BathSpec, SystemSpec, ThermalState};
use crate::spectral;
use crate::{Error, Result};

/// Tuning knobs of the adaptive integrator.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Target relative accuracy of each integral.
    pub rel_tol: f64,
    /// Frequency at which semi-infinite integrals switch to the folded tail;
    /// `None` selects 10·max(ω₀, ω_cut).
    pub split_point: Option<f64>,
    /// Interval budget of the adaptive driver.
    pub max_intervals: usize,
    /// Upper integration limit for divergent Ohmic energy integrals, in
    /// units of ω₀. The capped values depend on this cutoff by construction.
    pub ohmic_cap_factor: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-9, split_point: None, max_intervals: 4000, ohmic_cap_factor: 1e3 }
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    /// Integral estimate.
    pub value: f64,
    /// Absolute error estimate attached to `value`.
    pub error_estimate: f64,
    /// Number of intervals in the final partition.
    pub intervals: usize,
}

// 15-point Kronrod abscissae on [0, 1] (positive half; symmetric rule).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_47,
    0.0,
];

// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// 7-point Gauss weights for the odd-index abscissae (plus centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel: returns (estimate, error estimate) on [a, b]
/// with the conservative QUADPACK error rescaling.
fn kronrod15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = libm::fabs(resk);
    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let fsum = f1 + f2;
        resk += WGK[j] * fsum;
        resabs += WGK[j] * (libm::fabs(f1) + libm::fabs(f2));
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * libm::fabs(fc - reskh);
    for j in 0..7 {
        resasc += WGK[j] * (libm::fabs(fv1[j] - reskh) + libm::fabs(fv2[j] - reskh));
    }
    let value = resk * half;
    resabs *= libm::fabs(half);
    resasc *= libm::fabs(half);
    let mut err = libm::fabs((resk - resg) * half);
    if resasc != 0.0 && err != 0.0 {
        let scaled = libm::pow(200.0 * err / resasc, 1.5);
        err = resasc * if scaled < 1.0 { scaled } else { 1.0 };
    }
    let tiny_floor = f64::MIN_POSITIVE / (50.0 * f64::EPSILON);
    if resabs > tiny_floor {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Globally adaptive integration of `f` over the finite interval [a, b].
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Quadrature> {
    if !a.is_finite() || !b.is_finite() || b <= a {
        return Err(Error::InvalidParameter("integration interval must be finite and non-empty"));
    }
    let (value, error) = kronrod15(f, a, b);
    let mut panels = Vec::with_capacity(64);
    panels.push(Panel { a, b, value, error });
    loop {
        let mut total = 0.0;
        let mut total_err = 0.0;
        let mut worst = 0usize;
        let mut worst_err = -1.0;
        for (i, p) in panels.iter().enumerate() {
            total += p.value;
            total_err += p.error;
            if p.error > worst_err {
                worst_err = p.error;
                worst = i;
            }
        }
        if total_err <= cfg.rel_tol * libm::fabs(total) || total_err == 0.0 {
            return Ok(Quadrature { value: total, error_estimate: total_err, intervals: panels.len() });
        }
        let split = panels[worst];
        let mid = 0.5 * (split.a + split.b);
        if panels.len() >= cfg.max_intervals || mid <= split.a || mid >= split.b {
            return Err(Error::QuadratureNonConvergence { value: total, error_estimate: total_err });
        }
        let (v1, e1) = kronrod15(f, split.a, mid);
        let (v2, e2) = kronrod15(f, mid, split.b);
        panels[worst] = Panel { a: split.a, b: mid, value: v1, error: e1 };
        panels.push(Panel { a: mid, b: split.b, value: v2, error: e2 });
    }
}

/// The folded tail stops at this mapped frequency 1/ω rather than at u = 0,
/// keeping evaluation points below ω = 10¹⁵⁰ where 1/u² cannot overflow; the
/// neglected stretch is then bounded explicitly before the result is trusted.
const TAIL_FLOOR: f64 = 1e-150;

/// Integral of `f` over (0, ∞): direct on (0, split], folded by ω → 1/ω on
/// the remainder.
///
/// The fold truncates the tail at ω = 1/[`TAIL_FLOOR`], which is legitimate
/// only for integrands decaying at least as fast as 1/ω² — exactly the
/// class whose folded image u⁻²·f(1/u) stays bounded near u = 0. The edge
/// mass u·g(u) at the truncation point bounds the neglected remainder for
/// that class; when it is not negligible (an integrand with a divergent or
/// barely convergent tail) the result is rejected instead of silently
/// capped.
pub fn integrate_semi_infinite(
    f: &dyn Fn(f64) -> f64,
    split: f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature> {
    if !split.is_finite() || split <= 0.0 {
        return Err(Error::InvalidParameter("split point must be positive and finite"));
    }
    let head = integrate(f, 0.0, split, cfg)?;
    let folded = move |u: f64| f(1.0 / u) / (u * u);
    let tail = integrate(&folded, TAIL_FLOOR, 1.0 / split, cfg)?;
    let value = head.value + tail.value;
    let residual = TAIL_FLOOR * libm::fabs(folded(TAIL_FLOOR));
    let error_estimate = head.error_estimate + tail.error_estimate + residual;
    if !value.is_finite() || !residual.is_finite() || residual > cfg.rel_tol * libm::fabs(value) {
        return Err(Error::QuadratureNonConvergence { value, error_estimate });
    }
    Ok(Quadrature {
        value,
        error_estimate,
        intervals: head.intervals + tail.intervals,
    })
}

/// Integral of `f` over (0, cap]: direct on (0, split], folded on the rest.
pub fn integrate_capped(
    f: &dyn Fn(f64) -> f64,
    split: f64,
    cap: f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature> {
    if !cap.is_finite() || cap <= split {
        return Err(Error::InvalidParameter("cap must exceed the split point"));
    }
    let head = integrate(f, 0.0, split, cfg)?;
    let folded = move |u: f64| f(1.0 / u) / (u * u);
    let tail = integrate(&folded, 1.0 / cap, 1.0 / split, cfg)?;
    Ok(Quadrature {
        value: head.value + tail.value,
        error_estimate: head.error_estimate + tail.error_estimate,
        intervals: head.intervals + tail.intervals,
    })
}

/// Normalization ∫₀^∞ f dω of a spectral distribution.
pub fn density_norm(f: &dyn Fn(f64) -> f64, split: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(integrate_semi_infinite(f, split, cfg)?.value)
}

fn split_point(cfg: &QuadratureConfig, sys: &SystemSpec, bath: &BathSpec) -> f64 {
    cfg.split_point.unwrap_or_else(|| {
        let base = 10.0 * sys.omega0();
        match bath.omega_cut() {
            Some(wc) => base.max(10.0 * wc),
            None => base,
        }
    })
}

/// Mean energy from the spectral distribution, βE = β·∫ ε(ω, T)·P_E(ω) dω.
///
/// Drude: converging semi-infinite integral. Ohmic: capped at
/// `ohmic_cap_factor`·ω₀ (the integral diverges logarithmically).
pub fn mean_energy_1d_quad(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let t = state.temperature();
    let integrand = move |w: f64| thermal_energy(w, t) * spectral::p_e_1d(sys, bath, w);
    let split = split_point(cfg, sys, bath);
    let q = match bath {
        BathSpec::Drude { .. } => integrate_semi_infinite(&integrand, split, cfg)?,
        BathSpec::Ohmic { .. } => {
            integrate_capped(&integrand, split, cfg.ohmic_cap_factor * sys.omega0(), cfg)?
        }
    };
    Ok(state.beta() * q.value)
}

/// Internal energy from the spectral distribution, βU = β·∫ ε·P_U dω.
///
/// Drude: pole-sum distribution, semi-infinite. Ohmic: logarithmic-derivative
/// distribution, capped with the same cutoff as the mean energy.
pub fn internal_energy_1d_quad(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let t = state.temperature();
    let split = split_point(cfg, sys, bath);
    let q = match bath {
        BathSpec::Drude { .. } => {
            let poles = invert_drude(sys, bath)?;
            let integrand = move |w: f64| thermal_energy(w, t) * spectral::p_u_1d(&poles, w);
            integrate_semi_infinite(&integrand, split, cfg)?
        }
        BathSpec::Ohmic { .. } => {
            let integrand =
                move |w: f64| thermal_energy(w, t) * spectral::p_u_log_derivative(sys, bath, w);
            integrate_capped(&integrand, split, cfg.ohmic_cap_factor * sys.omega0(), cfg)?
        }
    };
    Ok(state.beta() * q.value)
}

/// 3D mean energy from the spectral distribution, βE = β·∫ 3ε·P_E dω
/// (the single-mode energy of three degrees of freedom is 3ε).
pub fn mean_energy_3d_quad(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let t = state.temperature();
    let integrand = move |w: f64| 3.0 * thermal_energy(w, t) * spectral::p_e_3d(sys, bath, w);
    let split = split_point(cfg, sys, bath);
    let q = match bath {
        BathSpec::Drude { .. } => integrate_semi_infinite(&integrand, split, cfg)?,
        BathSpec::Ohmic { .. } => {
            integrate_capped(&integrand, split, cfg.ohmic_cap_factor * sys.omega0(), cfg)?
        }
    };
    Ok(state.beta() * q.value)
}

/// 3D internal energy from the spectral distribution, βU = β·∫ 3ε·P_U dω.
/// Requires a Drude kernel (the weight is a pole sum).
pub fn internal_energy_3d_quad(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let poles = invert_drude(sys, bath)?;
    let mp = magneto_poles(&poles, sys.cyclotron());
    let t = state.temperature();
    let integrand = move |w: f64| 3.0 * thermal_energy(w, t) * spectral::p_u_3d(&poles, &mp, w);
    let split = split_point(cfg, sys, bath);
    Ok(state.beta() * integrate_semi_infinite(&integrand, split, cfg)?.value)
}

/// 3D internal energy assembled as 3×(field-free 1D part) plus the integral
/// of the field-induced in-plane correction 3ε·(P_U,3D − P_U,1D).
///
/// Numerically independent route; must agree with
/// [`internal_energy_3d_quad`] to quadrature accuracy.
pub fn internal_energy_3d_quad_decomposed(
    sys: &SystemSpec,
    bath: &BathSpec,
    state: &ThermalState,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let poles = invert_drude(sys, bath)?;
    let mp = magneto_poles(&poles, sys.cyclotron());
    let t = state.temperature();
    let base = internal_energy_1d_quad(sys, bath, state, cfg)?;
    let correction = move |w: f64| {
        3.0 * thermal_energy(w, t) * (spectral::p_u_3d(&poles, &mp, w) - spectral::p_u_1d(&poles, w))
    };
    let split = split_point(cfg, sys, bath);
    let q = integrate_semi_infinite(&correction, split, cfg)?;
    Ok(3.0 * base + state.beta() * q.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sys1() -> SystemSpec {
        SystemSpec::new(1.0).unwrap()
    }

    fn sys3() -> SystemSpec {
        SystemSpec::new(1.0).unwrap().with_cyclotron(2.5).unwrap()
    }

    fn bath() -> BathSpec {
        BathSpec::drude(1.0, 10.0).unwrap()
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn kronrod_panel_is_exact_on_polynomials() {
        // The 15-point Kronrod rule integrates degree ≤ 22 exactly.
        let q = integrate(&|x| x * x * x * x * x * x * x, 0.0, 1.0, &cfg()).unwrap();
        assert_relative_eq!(q.value, 0.125, max_relative = 1e-15);
        assert_eq!(q.intervals, 1);
        let q10 = integrate(&|x| 11.0 * libm::pow(x, 10.0), -1.0, 1.0, &cfg()).unwrap();
        assert_relative_eq!(q10.value, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn semi_infinite_lorentzian_norm() {
        // ∫₀^∞ dω/(1 + ω²) = π/2.
        let q = integrate_semi_infinite(&|w| 1.0 / (1.0 + w * w), 10.0, &cfg()).unwrap();
        assert_relative_eq!(q.value, core::f64::consts::FRAC_PI_2, max_relative = 1e-10);
    }

    #[test]
    fn semi_infinite_exponential() {
        let q = integrate_semi_infinite(&|w| libm::exp(-w), 5.0, &cfg()).unwrap();
        assert_relative_eq!(q.value, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn divergent_integral_is_reported() {
        // ∫₀^∞ dω/(1 + ω) diverges logarithmically: the folded tail never
        // drops below the truncation edge, so the residual check must refuse
        // to pass the capped value off as the integral.
        let r = integrate_semi_infinite(&|w| 1.0 / (1.0 + w), 10.0, &cfg());
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn invalid_intervals_are_rejected() {
        assert!(integrate(&|_| 1.0, 1.0, 1.0, &cfg()).is_err());
        assert!(integrate_capped(&|_| 1.0, 10.0, 5.0, &cfg()).is_err());
    }

    #[test]
    fn distribution_norms_are_unity() {
        let sys = sys3();
        let b = bath();
        let poles = invert_drude(&sys, &b).unwrap();
        let mp = magneto_poles(&poles, sys.cyclotron());
        let c = cfg();
        let split = split_point(&c, &sys, &b);
        let n_e1 = density_norm(&|w| spectral::p_e_1d(&sys, &b, w), split, &c).unwrap();
        let n_u1 = density_norm(&|w| spectral::p_u_1d(&poles, w), split, &c).unwrap();
        let n_e3 = density_norm(&|w| spectral::p_e_3d(&sys, &b, w), split, &c).unwrap();
        let n_u3 = density_norm(&|w| spectral::p_u_3d(&poles, &mp, w), split, &c).unwrap();
        assert_relative_eq!(n_e1, 1.0, max_relative = 1e-8);
        assert_relative_eq!(n_u1, 1.0, max_relative = 1e-8);
        assert_relative_eq!(n_e3, 1.0, max_relative = 1e-8);
        assert_relative_eq!(n_u3, 1.0, max_relative = 1e-8);
        // The Ohmic P_E norm converges even though its energy integral does not.
        let ohmic = BathSpec::ohmic(0.5).unwrap();
        let n_ohmic = density_norm(&|w| spectral::p_e_1d(&sys, &ohmic, w), 10.0, &c).unwrap();
        assert_relative_eq!(n_ohmic, 1.0, max_relative = 1e-8);
    }

    #[test]
    fn frozen_energy_integrals() {
        // γ = ω₀ = 1, ω_cut = 10, α = 0.5 (and ω_c = 2.5 in 3D).
        let sys = sys1();
        let st = ThermalState::from_alpha(0.5, &sys).unwrap();
        let c = cfg();
        let e1 = mean_energy_1d_quad(&sys, &bath(), &st, &c).unwrap();
        let u1 = internal_energy_1d_quad(&sys, &bath(), &st, &c).unwrap();
        assert_relative_eq!(e1, 1.087_024_941_569_670_2, max_relative = 1e-7);
        assert_relative_eq!(u1, 1.132_898_925_086_010_4, max_relative = 1e-7);

        let s3 = sys3();
        let st3 = ThermalState::from_alpha(0.5, &s3).unwrap();
        let e3 = mean_energy_3d_quad(&s3, &bath(), &st3, &c).unwrap();
        let u3 = internal_energy_3d_quad(&s3, &bath(), &st3, &c).unwrap();
        assert_relative_eq!(e3, 3.377_980_660_685_841_6, max_relative = 1e-7);
        assert_relative_eq!(u3, 3.503_289_460_689_842, max_relative = 1e-7);
    }

    #[test]
    fn ohmic_capped_energies_match_frozen_value_and_each_other() {
        // γ = 0.5, α = 0.5, cap = 10³ω₀: P_E ≡ P_U makes the two routes equal.
        let sys = sys1();
        let ohmic = BathSpec::ohmic(0.5).unwrap();
        let st = ThermalState::from_alpha(0.5, &sys).unwrap();
        let c = cfg();
        let e = mean_energy_1d_quad(&sys, &ohmic, &st, &c).unwrap();
        let u = internal_energy_1d_quad(&sys, &ohmic, &st, &c).unwrap();
        assert_relative_eq!(e, 1.214_467_660_254_152_4, max_relative = 1e-7);
        assert_relative_eq!(u, e, max_relative = 1e-9);
    }

    #[test]
    fn decomposed_3d_internal_energy_agrees_with_direct() {
        let s3 = sys3();
        let st3 = ThermalState::from_alpha(0.5, &s3).unwrap();
        let c = cfg();
        let direct = internal_energy_3d_quad(&s3, &bath(), &st3, &c).unwrap();
        let decomposed = internal_energy_3d_quad_decomposed(&s3, &bath(), &st3, &c).unwrap();
        assert_relative_eq!(direct, decomposed, max_relative = 1e-8);
    }

    #[test]
    fn quadrature_tracks_series_at_high_temperature() {
        // At α = 0.1 a 10⁶-term raw sum is converged to ~1e-6 relative;
        // the integral route must land on the same value.
        let sys = sys1();
        let st = ThermalState::from_alpha(0.1, &sys).unwrap();
        let series = crate::matsubara::mean_energy_1d(&sys, &bath(), &st, 1_000_000)
            .unwrap()
            .beta_energy;
        let quad = mean_energy_1d_quad(&sys, &bath(), &st, &cfg()).unwrap();
        assert_relative_eq!(series, quad, max_relative = 3e-6);
    }
}
