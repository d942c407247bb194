//! Model definitions: oscillator, friction kernels, linear-response functions.
//!
//! The damped oscillator is specified by a [`SystemSpec`] (frequency ω₀, mass
//! m, optional cyclotron frequency ω_c for the 3D case), a [`BathSpec`]
//! (strictly Ohmic or Drude-regularized friction) and a [`ThermalState`]
//! (temperature T, or equivalently α = ω₀/T). Everything downstream — series,
//! spectral densities, quadrature — is built from the dynamic stiffness
//! λ(ω) = m(ω₀² − ω²) − iω·μ̃(ω) and its matrix generalization in a magnetic
//! field.

use num_complex::Complex64;

use crate::{Error, Result};

fn positive_finite(x: f64, what: &'static str) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidParameter(what))
    }
}

/// Harmonic oscillator, optionally in a uniform magnetic field along z.
///
/// The cyclotron frequency ω_c = eB/mc selects the model dimensionality by
/// convention of the higher-level routines: ω_c is ignored by the `_1d`
/// family and used by the `_3d` family (an isotropic three-dimensional
/// oscillator; ω_c = 0 is the legitimate field-free 3D case).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    omega0: f64,
    mass: f64,
    cyclotron: f64,
}

impl SystemSpec {
    /// Oscillator of frequency `omega0` (> 0), unit mass, zero field.
    pub fn new(omega0: f64) -> Result<Self> {
        Ok(Self {
            omega0: positive_finite(omega0, "oscillator frequency must be positive")?,
            mass: 1.0,
            cyclotron: 0.0,
        })
    }

    /// Replaces the mass (> 0).
    pub fn with_mass(mut self, mass: f64) -> Result<Self> {
        self.mass = positive_finite(mass, "mass must be positive")?;
        Ok(self)
    }

    /// Replaces the cyclotron frequency (≥ 0).
    pub fn with_cyclotron(mut self, cyclotron: f64) -> Result<Self> {
        if cyclotron >= 0.0 && cyclotron.is_finite() {
            self.cyclotron = cyclotron;
            Ok(self)
        } else {
            Err(Error::InvalidParameter("cyclotron frequency must be non-negative"))
        }
    }

    /// Oscillator frequency ω₀.
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Oscillator mass m.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Cyclotron frequency ω_c.
    pub fn cyclotron(&self) -> f64 {
        self.cyclotron
    }
}

/// Friction kernel of the bath, in frequency units.
///
/// `gamma` is the friction rate; the Drude form suppresses friction above the
/// cutoff ω_cut and restores the strictly Ohmic kernel as ω_cut → ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BathSpec {
    /// Memoryless friction, μ̃(ω) = mγ.
    Ohmic {
        /// Friction rate γ.
        gamma: f64,
    },
    /// Lorentz-regularized friction, μ̃(ω) = mγ·ω_cut/(ω_cut − iω).
    Drude {
        /// Friction rate γ.
        gamma: f64,
        /// High-frequency cutoff ω_cut.
        omega_cut: f64,
    },
}

impl BathSpec {
    /// Strictly Ohmic bath with friction rate `gamma` (> 0).
    pub fn ohmic(gamma: f64) -> Result<Self> {
        Ok(BathSpec::Ohmic {
            gamma: positive_finite(gamma, "friction rate must be positive")?,
        })
    }

    /// Drude bath with friction rate `gamma` (> 0) and cutoff `omega_cut` (> 0).
    pub fn drude(gamma: f64, omega_cut: f64) -> Result<Self> {
        Ok(BathSpec::Drude {
            gamma: positive_finite(gamma, "friction rate must be positive")?,
            omega_cut: positive_finite(omega_cut, "cutoff frequency must be positive")?,
        })
    }

    /// Friction rate γ.
    pub fn gamma(&self) -> f64 {
        match *self {
            BathSpec::Ohmic { gamma } | BathSpec::Drude { gamma, .. } => gamma,
        }
    }

    /// Cutoff frequency, if the kernel has one.
    pub fn omega_cut(&self) -> Option<f64> {
        match *self {
            BathSpec::Ohmic { .. } => None,
            BathSpec::Drude { omega_cut, .. } => Some(omega_cut),
        }
    }
}

/// Equilibrium state of the oscillator-plus-bath compound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    temperature: f64,
    alpha: f64,
}

impl ThermalState {
    /// State at temperature `temperature` (> 0).
    pub fn new(temperature: f64, sys: &SystemSpec) -> Result<Self> {
        let t = positive_finite(temperature, "temperature must be positive")?;
        Ok(Self { temperature: t, alpha: sys.omega0() / t })
    }

    /// State at inverse reduced temperature α = ω₀/T (> 0).
    pub fn from_alpha(alpha: f64, sys: &SystemSpec) -> Result<Self> {
        let a = positive_finite(alpha, "alpha must be positive")?;
        Ok(Self { temperature: sys.omega0() / a, alpha: a })
    }

    /// Temperature T.
    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Dimensionless inverse temperature α = βω₀.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Inverse temperature β = 1/T.
    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }
}

/// Fourier-transformed friction kernel μ̃(ω) = ∫₀^∞ μ(t)·e^{iωt} dt.
///
/// Obeys μ̃(−ω) = μ̃(ω)* and Re μ̃(ω) ≥ 0 (positive dissipation).
pub fn memory_kernel_ft(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> Complex64 {
    let m = sys.mass();
    match *bath {
        BathSpec::Ohmic { gamma } => Complex64::new(m * gamma, 0.0),
        BathSpec::Drude { gamma, omega_cut } => {
            Complex64::new(m * gamma * omega_cut, 0.0) / Complex64::new(omega_cut, -omega)
        }
    }
}

/// Frequency derivative dμ̃/dω of the friction kernel.
pub fn memory_kernel_ft_deriv(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> Complex64 {
    let m = sys.mass();
    match *bath {
        BathSpec::Ohmic { .. } => Complex64::new(0.0, 0.0),
        BathSpec::Drude { gamma, omega_cut } => {
            let den = Complex64::new(omega_cut, -omega);
            Complex64::new(0.0, m * gamma * omega_cut) / (den * den)
        }
    }
}

/// Dynamic stiffness λ(ω) = m(ω₀² − ω²) − iω·μ̃(ω).
///
/// The 1D dynamical susceptibility is 1/λ; the zeros of λ in the lower
/// half-plane are the response poles.
pub fn dynamic_stiffness(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> Complex64 {
    let mu = memory_kernel_ft(sys, bath, omega);
    let m = sys.mass();
    let w0 = sys.omega0();
    Complex64::new(m * (w0 * w0 - omega * omega), 0.0) - Complex64::i() * omega * mu
}

/// Frequency derivative dλ/dω = −2mω − i(μ̃ + ω·dμ̃/dω).
pub fn dynamic_stiffness_deriv(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> Complex64 {
    let mu = memory_kernel_ft(sys, bath, omega);
    let dmu = memory_kernel_ft_deriv(sys, bath, omega);
    Complex64::new(-2.0 * sys.mass() * omega, 0.0) - Complex64::i() * (mu + omega * dmu)
}

/// Relative threshold below which a response denominator counts as a pole.
const POLE_EPS: f64 = 1e-14;

/// One-dimensional dynamical susceptibility α(ω) = 1/λ(ω).
///
/// Satisfies the reciprocity λ·α = 1, the reality condition α(−ω) = α(ω)*
/// and Im α(ω) ≥ 0 for ω ≥ 0. Errors only if evaluated exactly on a pole,
/// which positive damping makes unreachable.
pub fn susceptibility_1d(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> Result<Complex64> {
    let lam = dynamic_stiffness(sys, bath, omega);
    let scale = sys.mass() * sys.omega0() * sys.omega0();
    if lam.norm_sqr() <= (POLE_EPS * scale) * (POLE_EPS * scale) {
        return Err(Error::PoleSingularity { omega });
    }
    Ok(lam.inv())
}

/// Cartesian components of the 3D susceptibility tensor for a field along z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseTensor {
    /// Symmetric in-plane component α_xx = α_yy = λ/(λ² − (mω_cω)²).
    pub xx: Complex64,
    /// Axial component α_zz = 1/λ (the field does not act along z).
    pub zz: Complex64,
    /// Antisymmetric (Hall-like) component α_xy = −iωmω_c/(λ² − (mω_cω)²).
    pub xy: Complex64,
}

/// Full 3D susceptibility tensor at frequency ω.
///
/// For ω_c = 0 both `xx` and `zz` reduce to the 1D susceptibility and `xy`
/// vanishes.
pub fn susceptibility_tensor(sys: &SystemSpec, bath: &BathSpec, omega: f64) -> Result<ResponseTensor> {
    let lam = dynamic_stiffness(sys, bath, omega);
    let c = sys.mass() * sys.cyclotron() * omega;
    let den = lam * lam - Complex64::new(c * c, 0.0);
    let scale = sys.mass() * sys.omega0() * sys.omega0();
    let eps_lin = POLE_EPS * scale;
    let eps_quad = POLE_EPS * scale * scale;
    if lam.norm_sqr() <= eps_lin * eps_lin || den.norm_sqr() <= eps_quad * eps_quad {
        return Err(Error::PoleSingularity { omega });
    }
    Ok(ResponseTensor {
        xx: lam / den,
        zz: lam.inv(),
        xy: Complex64::new(0.0, -c) / den,
    })
}
