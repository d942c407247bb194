//! Pole structure of the Drude-damped oscillator.
//!
//! With a Drude kernel the dynamic stiffness λ(ω), continued to the imaginary
//! axis ω = iν, factorizes over three characteristic rates: the oscillator
//! pair z± = Γ/2 ± √(Γ²/4 − Ω₀²) and the bath relaxation rate Ω, related to
//! the bare parameters by
//!
//! * ω_cut = Ω + Γ,
//! * ω₀²  = Ω₀²·Ω/(Ω + Γ),
//! * γ    = Γ·[Ω(Ω + Γ) + Ω₀²]/(Ω + Γ)².
//!
//! Inverting that map requires the largest real root in (0, ω_cut) of the
//! cubic Ω³ − ω_cut·Ω² + (ω₀² + γω_cut)·Ω − ω₀²ω_cut = 0 — the branch that
//! joins continuously to Ω → ω_cut as γ → 0. A magnetic field along z shifts
//! the in-plane pair to the complex rates Ω₁, Ω₂ of [`magneto_poles`].

use num_complex::Complex64;

use crate::model::{BathSpec, SystemSpec};
use crate::{Error, Result};

/// Characteristic rates of the field-free Drude-damped oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudePoles {
    /// Effective damping Γ = z₊ + z₋ = ω_cut − Ω.
    pub damping: f64,
    /// Effective frequency Ω₀ = √(z₊·z₋).
    pub freq0: f64,
    /// Bath relaxation rate Ω (real root of the inversion cubic).
    pub relax: f64,
    /// Oscillator rate z₊ = Γ/2 + √(Γ²/4 − Ω₀²); complex for underdamped
    /// motion, real for overdamped motion.
    pub pole_plus: Complex64,
    /// Oscillator rate z₋ = Γ/2 − √(Γ²/4 − Ω₀²) = z₊* in the underdamped
    /// regime.
    pub pole_minus: Complex64,
}

impl DrudePoles {
    /// Cutoff frequency reconstructed from the rates, ω_cut = Ω + Γ.
    pub fn omega_cut(&self) -> f64 {
        self.relax + self.damping
    }

    /// Bath parameters (γ, ω₀, ω_cut) reconstructed from the rates.
    pub fn recovered_parameters(&self) -> (f64, f64, f64) {
        let (g, w0sq, wc) = self.recovered_squares();
        (g, libm::sqrt(w0sq), wc)
    }

    fn recovered_squares(&self) -> (f64, f64, f64) {
        let s = self.relax + self.damping;
        let w0sq = self.freq0 * self.freq0 * self.relax / s;
        let gamma = self.damping * (self.relax * s + self.freq0 * self.freq0) / (s * s);
        (gamma, w0sq, s)
    }
}

/// Root of `f` inside [lo, hi], given f(lo) < 0 ≤ f(hi), by Newton steps
/// safeguarded with bisection. The bracket collapses onto the root, so the
/// stopping width 4ε·hi is a *relative* tolerance even for roots far below
/// the initial bracket scale.
fn newton_bisect(
    f: &dyn Fn(f64) -> f64,
    df: &dyn Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64> {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let dfx = df(x);
        let newton = if dfx != 0.0 { x - fx / dfx } else { lo };
        let mut next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == x {
            next = 0.5 * (lo + hi);
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(0.5 * (lo + hi));
        }
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(Error::RootIterationLimit)
}

/// Largest real root of p(x) = x³ − ω_cut·x² + (ω₀² + γω_cut)·x − ω₀²ω_cut
/// inside (0, ω_cut): the relaxation rate Ω.
fn relaxation_root(omega0: f64, gamma: f64, omega_cut: f64) -> Result<f64> {
    let w0sq = omega0 * omega0;
    let b = w0sq + gamma * omega_cut;
    let c = w0sq * omega_cut;
    let p = move |x: f64| ((x - omega_cut) * x + b) * x - c;
    let dp = move |x: f64| (3.0 * x - 2.0 * omega_cut) * x + b;

    // p(0) = −ω₀²ω_cut < 0 and p(ω_cut) = γω_cut² > 0, so (0, ω_cut) always
    // brackets a root. To get the *largest* root, raise the lower edge to the
    // right-hand stationary point x₊ of p whenever p(x₊) < 0: beyond x₊ the
    // cubic is strictly increasing, so exactly one root remains to the right.
    let mut lo = 0.0;
    let disc = omega_cut * omega_cut - 3.0 * b;
    if disc > 0.0 {
        let x_plus = (omega_cut + libm::sqrt(disc)) / 3.0;
        if x_plus > 0.0 && x_plus < omega_cut && p(x_plus) < 0.0 {
            lo = x_plus;
        }
    }
    newton_bisect(&p, &dp, lo, omega_cut)
}

/// Smallest positive real root of q(Γ) = Γ³ − 2ω_cut·Γ² + (ω_cut² + ω₀² +
/// γω_cut)·Γ − γω_cut²: the damping rate Γ. q is the inversion cubic mapped
/// by x = ω_cut − Γ, so its smallest root mirrors the largest root Ω of p.
///
/// Solving for Γ in its own variable matters at weak coupling, where
/// Γ ≈ γ is the tiny gap between ω_cut and Ω: forming it as the difference
/// ω_cut − Ω would forfeit all relative accuracy to cancellation.
fn damping_root(omega0: f64, gamma: f64, omega_cut: f64) -> Result<f64> {
    let w0sq = omega0 * omega0;
    let b = omega_cut * omega_cut + w0sq + gamma * omega_cut;
    let c = gamma * omega_cut * omega_cut;
    let q = move |g: f64| ((g - 2.0 * omega_cut) * g + b) * g - c;
    let dq = move |g: f64| (3.0 * g - 4.0 * omega_cut) * g + b;

    // q(0) = −γω_cut² < 0 and q(ω_cut) = ω₀²ω_cut > 0. When stationary
    // points exist the smallest root sits left of the local maximum g₋ if
    // q(g₋) ≥ 0; otherwise q stays negative through both turning points and
    // its only root lies beyond the local minimum g₊.
    let mut lo = 0.0;
    let mut hi = omega_cut;
    let disc = omega_cut * omega_cut - 3.0 * (w0sq + gamma * omega_cut);
    if disc > 0.0 {
        let s = libm::sqrt(disc);
        let g_minus = (2.0 * omega_cut - s) / 3.0;
        if q(g_minus) >= 0.0 {
            hi = g_minus;
        } else {
            lo = (2.0 * omega_cut + s) / 3.0;
        }
    }
    newton_bisect(&q, &dq, lo, hi)
}

/// Characteristic rates (Γ, Ω₀, Ω, z±) of a Drude bath.
///
/// Errors with [`Error::InvalidParameter`] for an Ohmic bath (no finite
/// cutoff, hence no relaxation pole) and with
/// [`Error::InversionInconsistent`] if the recovered parameters fail to
/// reproduce the inputs — a defensive check on the root selection.
pub fn invert_drude(sys: &SystemSpec, bath: &BathSpec) -> Result<DrudePoles> {
    let (gamma, omega_cut) = match *bath {
        BathSpec::Drude { gamma, omega_cut } => (gamma, omega_cut),
        BathSpec::Ohmic { .. } => {
            return Err(Error::InvalidParameter(
                "an Ohmic kernel has no Drude pole structure",
            ))
        }
    };
    let omega0 = sys.omega0();

    // Γ and Ω partition ω_cut; recover the smaller of the two from its own
    // cubic and the larger by subtraction, so both keep full relative
    // accuracy on either extreme of the damping strength.
    let damping = damping_root(omega0, gamma, omega_cut)?;
    let relax = if damping <= 0.5 * omega_cut {
        omega_cut - damping
    } else {
        relaxation_root(omega0, gamma, omega_cut)?
    };
    let freq0 = libm::sqrt(omega0 * omega0 * omega_cut / relax);

    // z± from the discriminant Γ²/4 − Ω₀². In the overdamped branch the
    // smaller rate comes from z₋ = Ω₀²/z₊ instead of the subtraction
    // Γ/2 − √(Γ²/4 − Ω₀²), which cancels badly when Ω₀ ≪ Γ.
    let half = 0.5 * damping;
    let disc = half * half - freq0 * freq0;
    let (pole_plus, pole_minus) = if disc >= 0.0 {
        let z_plus = half + libm::sqrt(disc);
        (Complex64::new(z_plus, 0.0), Complex64::new(freq0 * freq0 / z_plus, 0.0))
    } else {
        let s = libm::sqrt(-disc);
        (Complex64::new(half, s), Complex64::new(half, -s))
    };

    let poles = DrudePoles { damping, freq0, relax, pole_plus, pole_minus };

    // Round-trip guard: the forward map must reproduce (γ, ω₀², ω_cut).
    let (g_back, w0sq_back, wc_back) = poles.recovered_squares();
    let rel = |a: f64, b: f64| libm::fabs(a - b) / libm::fabs(b);
    let worst = rel(g_back, gamma)
        .max(rel(w0sq_back, omega0 * omega0))
        .max(rel(wc_back, omega_cut));
    if worst > 1e-8 {
        return Err(Error::InversionInconsistent { rel_error: worst });
    }
    Ok(poles)
}

/// In-plane characteristic rates of the Drude-damped oscillator in a
/// magnetic field along z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnetoPoles {
    /// Real part a = (ω_c/2)² + Ω₀² − Γ²/4 of the shifted discriminant.
    pub disc_re: f64,
    /// Modulus b = |a + iΓω_c/2| of the shifted discriminant.
    pub disc_mod: f64,
    /// Rate Ω₁ = [Γ/2 + √((b−a)/2)] − i[ω_c/2 + √((b+a)/2)].
    pub pole_upper: Complex64,
    /// Rate Ω₂ = [Γ/2 − √((b−a)/2)] − i[ω_c/2 − √((b+a)/2)]; Re Ω₂ > 0.
    pub pole_lower: Complex64,
}

/// Splits the in-plane oscillator pair under a cyclotron frequency ω_c.
///
/// Ω₁ and Ω₂ are the roots of z² − (Γ − iω_c)z + Ω₀² = 0, so they satisfy
/// Ω₁ + Ω₂ = Γ − iω_c and Ω₁·Ω₂ = Ω₀² exactly; at ω_c = 0 the set
/// {Ω₁, Ω₂} collapses back to {z₋, z₊}.
pub fn magneto_poles(poles: &DrudePoles, cyclotron: f64) -> MagnetoPoles {
    let g2 = 0.5 * poles.damping;
    let wc2 = 0.5 * cyclotron;
    let a = wc2 * wc2 + poles.freq0 * poles.freq0 - g2 * g2;
    let fac = poles.damping * wc2; // Γω_c/2
    let b = libm::hypot(a, fac);

    // b ± a without cancellation: whichever difference is small is recovered
    // from the exact identity b² − a² = (Γω_c/2)².
    let (bpa, bma) = if fac == 0.0 {
        if a >= 0.0 {
            (2.0 * a, 0.0)
        } else {
            (0.0, -2.0 * a)
        }
    } else if a >= 0.0 {
        let bpa = b + a;
        (bpa, fac * fac / bpa)
    } else {
        let bma = b - a;
        (fac * fac / bma, bma)
    };
    let s_re = libm::sqrt(0.5 * bma);
    let s_im = libm::sqrt(0.5 * bpa);

    MagnetoPoles {
        disc_re: a,
        disc_mod: b,
        pole_upper: Complex64::new(g2 + s_re, -(wc2 + s_im)),
        pole_lower: Complex64::new(g2 - s_re, -(wc2 - s_im)),
    }
}
