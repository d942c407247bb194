//! Equilibrium energetics of damped quantum harmonic oscillators.
//!
//! A harmonic oscillator coupled bilinearly to a bath of harmonic modes stays
//! entangled with that bath even in thermal equilibrium, so the familiar
//! textbook answer "(ω/2)·coth(ω/2T) per mode" splits into *three* distinct,
//! equally defensible energies:
//!
//! * the **mean energy** `E` — the expectation value of the bare oscillator
//!   Hamiltonian (kinetic plus potential term),
//! * the **internal energy** `U` — minus the temperature derivative of the
//!   reduced partition function, `−∂ ln 𝒵 / ∂β`, and
//! * the **Gibbs energy** `ℰ = ∂(β F)/∂β` built from the free energy of the
//!   damped oscillator.
//!
//! All three coincide for vanishing coupling and in the classical limit, and
//! all three can be written either as a Matsubara sum over bosonic
//! frequencies ν_n = 2πnT ([`matsubara`]) or as a frequency integral of the
//! single-mode energy against a spectral distribution ([`spectral`],
//! [`quadrature`]). A third, physically transparent route diagonalizes an
//! explicit finite bath into exact normal modes ([`normal_mode`]).
//!
//! Supported configurations:
//!
//! * one-dimensional oscillator with strictly Ohmic or Drude-regularized
//!   Ohmic friction ([`model::BathSpec`]),
//! * three-dimensional isotropic oscillator in a uniform magnetic field
//!   along z (cyclotron frequency on [`model::SystemSpec`]).
//!
//! The crate is `no_std` (with `alloc`); all transcendental functions go
//! through `libm`, so results are bit-for-bit identical with and without the
//! standard library. Units: ħ = k_B = 1 throughout, energies are reported in
//! the dimensionless combination β·(energy).

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod drude;
pub mod eigen;
mod error;
pub mod math;
pub mod matsubara;
pub mod model;
pub mod normal_mode;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
