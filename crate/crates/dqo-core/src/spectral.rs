//! Spectral distributions of the thermal energies.
//!
//! Each thermally averaged energy can be written as a frequency integral of
//! the single-mode energy ε(ω, T) = (ω/2)coth(ω/2T) against a distribution
//! that is normalized to one, non-negative, and independent of temperature:
//!
//! * `P_E` weighs the mean energy ⟨H_osc⟩ (with kinetic and potential parts
//!   `P_kin`, `P_pot`, so that P_E = (P_kin + P_pot)/2),
//! * `P_U` weighs the internal energy −∂_β ln 𝒵 and is a pure pole sum — a
//!   difference of Lorentzian-like weights x/(x² + ω²) over the
//!   characteristic rates of [`crate::drude`].
//!
//! For a strictly Ohmic kernel `P_U` has no pole representation; the
//! logarithmic-derivative form [`p_u_log_derivative`] covers both kernels and
//! coincides with the pole sum for Drude damping (asserted in the tests). In
//! the Ohmic case it degenerates to `P_E` pointwise.
//!
//! All distributions decay only as 1/ω³ (Ohmic: 1/ω), so second moments — and
//! with them the mean/Gibbs energies at Ohmic damping — do not converge; see
//! [`crate::quadrature`] for how integrals against ε are regularized.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::drude::{DrudePoles, MagnetoPoles};
use crate::model::{
    dynamic_stiffness, dynamic_stiffness_deriv, memory_kernel_ft, BathSpec, SystemSpec,
};

const FRAC_1_PI: f64 = core::f64::consts::FRAC_1_PI;

/// Distribution of the mean energy, P_E(ω) = (m/π)·Im α(ω)·(1 + ω₀²/ω²)·ω.
///
/// Implemented in the pole-free form (m/π)·Re μ̃·(ω² + ω₀²)/|λ|², which is
/// regular at ω = 0 and reproduces the limit P_E(0) = γ/(πω₀²) exactly.
pub fn p_e_1d(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> f64 {
    let lam = dynamic_stiffness(sys, bath, omega);
    let mu = memory_kernel_ft(sys, bath, omega);
    let w0sq = sys.omega0() * sys.omega0();
    FRAC_1_PI * sys.mass() * mu.re * (omega * omega + w0sq) / lam.norm_sqr()
}

/// Kinetic-energy part, P_kin(ω) = (2m/π)·ω·Im α(ω); vanishes at ω = 0.
pub fn p_kin_1d(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> f64 {
    let lam = dynamic_stiffness(sys, bath, omega);
    let mu = memory_kernel_ft(sys, bath, omega);
    2.0 * FRAC_1_PI * sys.mass() * mu.re * omega * omega / lam.norm_sqr()
}

/// Potential-energy part, P_pot(ω) = (2mω₀²/π)·Im α(ω)/ω; its ω = 0 limit is
/// 2γ/(πω₀²), twice the mean-energy weight.
pub fn p_pot_1d(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> f64 {
    let lam = dynamic_stiffness(sys, bath, omega);
    let mu = memory_kernel_ft(sys, bath, omega);
    let w0sq = sys.omega0() * sys.omega0();
    2.0 * FRAC_1_PI * sys.mass() * mu.re * w0sq / lam.norm_sqr()
}

/// Lorentzian-like weight Re[z/(z² + ω²)] of one characteristic rate.
///
/// For ω > 1 the quotient is evaluated in the rescaled variable t = z/ω as
/// (z/ω²)/(t² + 1): the naive denominator z² + ω² has norm ~ω⁴, which
/// overflows for ω ≳ 10⁷⁷ and would zero the complex weights while their
/// real Ω and ω_cut partners survive — silently breaking the cancellation
/// that gives every pole-sum distribution its 1/ω⁴ tail.
fn pole_weight(z: Complex64, omega: f64) -> Complex64 {
    if omega > 1.0 {
        let s = 1.0 / omega;
        let t = z.scale(s);
        t.scale(s) / (t * t + 1.0)
    } else {
        z / (z * z + omega * omega)
    }
}

/// Distribution of the internal energy for Drude damping:
/// P_U(ω) = (1/π)·[z₊- and z₋-weights + Ω-weight − ω_cut-weight].
pub fn p_u_1d(poles: &DrudePoles, omega: f64) -> f64 {
    let pair = pole_weight(poles.pole_plus, omega) + pole_weight(poles.pole_minus, omega);
    let relax = poles.relax / (poles.relax * poles.relax + omega * omega);
    let wc = poles.omega_cut();
    let cut = wc / (wc * wc + omega * omega);
    FRAC_1_PI * (pair.re + relax - cut)
}

/// Internal-energy distribution from the logarithmic derivative of the
/// susceptibility, P_U(ω) = −(1/π)·Im[λ′(ω)/λ(ω)].
///
/// Valid for both kernels: for Drude damping it equals [`p_u_1d`]; for
/// strictly Ohmic damping it is the only closed form and coincides with
/// [`p_e_1d`] pointwise.
pub fn p_u_log_derivative(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> f64 {
    let lam = dynamic_stiffness(sys, bath, omega);
    let dlam = dynamic_stiffness_deriv(sys, bath, omega);
    -FRAC_1_PI * (dlam / lam).im
}

/// Distribution of the 3D mean energy in a magnetic field along z,
/// P_E(ω) = (mω/3π)·Im[2α_xx + α_zz]·(1 + ω₀²/ω²).
///
/// Implemented via the partial fractions 2α_xx = 1/(λ−mω_cω) + 1/(λ+mω_cω),
/// which keeps the expression regular at ω = 0 with P_E(0) = γ/(πω₀²).
pub fn p_e_3d(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> f64 {
    let lam = dynamic_stiffness(sys, bath, omega);
    let mu = memory_kernel_ft(sys, bath, omega);
    let w0sq = sys.omega0() * sys.omega0();
    let c = sys.mass() * sys.cyclotron() * omega;
    let shift = Complex64::new(c, 0.0);
    let weights =
        1.0 / (lam - shift).norm_sqr() + 1.0 / (lam + shift).norm_sqr() + 1.0 / lam.norm_sqr();
    FRAC_1_PI / 3.0 * sys.mass() * mu.re * (omega * omega + w0sq) * weights
}

/// Distribution of the 3D internal energy in a magnetic field:
/// P_U(ω) = (1/π)·[Ω-weight − ω_cut-weight
///   + (z₊ + z₋ + Ω₁ + Ω₁* + Ω₂ + Ω₂* weights)/3].
pub fn p_u_3d(poles: &DrudePoles, mp: &MagnetoPoles, omega: f64) -> f64 {
    let pairs = pole_weight(poles.pole_plus, omega)
        + pole_weight(poles.pole_minus, omega)
        + pole_weight(mp.pole_upper, omega)
        + pole_weight(mp.pole_upper.conj(), omega)
        + pole_weight(mp.pole_lower, omega)
        + pole_weight(mp.pole_lower.conj(), omega);
    let relax = poles.relax / (poles.relax * poles.relax + omega * omega);
    let wc = poles.omega_cut();
    let cut = wc / (wc * wc + omega * omega);
    FRAC_1_PI * (relax - cut + pairs.re / 3.0)
}

/// A local maximum of a spectral distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    /// Peak position.
    pub omega: f64,
    /// Distribution value at the peak.
    pub value: f64,
}

/// Absolute position tolerance of the golden-section peak refinement.
const PEAK_XTOL: f64 = 1e-10;

/// Locates all interior local maxima of `values` over `grid` and refines each
/// within its grid bracket by golden-section search on `density`.
///
/// A sample counts as a maximum if it strictly exceeds its left neighbour and
/// is at least as large as its right neighbour, so a flat plateau reports its
/// leftmost point. A monotone density yields an empty list. Endpoint maxima
/// are not reported. `grid` must be strictly increasing and at least as long
/// as three points for anything to be found.
pub fn find_peaks<F: Fn(f64) -> f64>(grid: &[f64], values: &[f64], density: F) -> Vec<Peak> {
    assert_eq!(grid.len(), values.len(), "grid/values length mismatch");
    let mut peaks = Vec::new();
    if grid.len() < 3 {
        return peaks;
    }
    for i in 1..grid.len() - 1 {
        if values[i] > values[i - 1] && values[i] >= values[i + 1] {
            let (omega, value) = golden_section_max(&density, grid[i - 1], grid[i + 1]);
            peaks.push(Peak { omega, value });
        }
    }
    peaks
}

/// Golden-section maximization on [a, b]; ties keep the left subinterval, so
/// plateaus resolve to their leftmost point.
fn golden_section_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9; // (√5 − 1)/2
    const INV_PHI2: f64 = 0.381_966_011_250_105_1; // 1 − (√5 − 1)/2
    let mut h = b - a;
    let mut c = a + INV_PHI2 * h;
    let mut d = a + INV_PHI * h;
    let mut fc = f(c);
    let mut fd = f(d);
    while h > PEAK_XTOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            h = b - a;
            c = a + INV_PHI2 * h;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            h = b - a;
            d = a + INV_PHI * h;
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}
