//! Scalar numerical helpers: single-mode thermal energy, compensated sums.
//!
//! Every transcendental goes through `libm` so that `std` and `no_std` builds
//! follow one code path and produce identical bits.

/// Mean thermal energy ε(ω, T) = (ω/2)·coth(ω/2T) of one harmonic mode.
///
/// Smooth limits are built in: ε(0, T) = T (classical equipartition) and
/// ε(ω, T) → ω/2 (zero-point energy) for ω ≫ T. Requires ω ≥ 0, T > 0.
pub fn thermal_energy(omega: f64, temperature: f64) -> f64 {
    debug_assert!(omega >= 0.0 && temperature > 0.0);
    if omega == 0.0 {
        return temperature;
    }
    // coth(x) = 1 + 2/(e^{2x} − 1) with x = ω/2T. `expm1` keeps the classical
    // regime ω ≪ T fully accurate; for ω ≫ T the exponential overflows to
    // infinity and the expression collapses cleanly to ω/2.
    0.5 * omega * (1.0 + 2.0 / libm::expm1(omega / temperature))
}

/// Neumaier-compensated accumulator for sums whose result is many orders of
/// magnitude smaller than the individual addends.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    /// Fresh accumulator at zero.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one addend, tracking the rounding error of the addition.
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Compensated total.
    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}
