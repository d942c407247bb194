//! Error taxonomy shared by every numerical routine in the crate.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the model constructors and numerical routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A constructor or routine received a parameter outside its domain
    /// (non-positive frequency, zero truncation order, …).
    InvalidParameter(&'static str),
    /// A response function was requested exactly on a pole of the
    /// susceptibility. Unreachable for positive damping, kept as a guard.
    PoleSingularity {
        /// Frequency at which the evaluation was attempted.
        omega: f64,
    },
    /// The mean- and Gibbs-energy Matsubara series, and the corresponding
    /// frequency integrals, have no finite limit for a strictly Ohmic kernel;
    /// only a cutoff-regularized evaluation is meaningful.
    OhmicSeriesDivergent,
    /// A strictly Ohmic kernel has no finite bandwidth to discretize into a
    /// finite mode set.
    OhmicDiscretization,
    /// Contributions of a complex-conjugate pole pair failed to cancel to a
    /// real sum; indicates a corrupted pole set.
    ResidueImaginary {
        /// Magnitude of the spurious imaginary part.
        magnitude: f64,
    },
    /// The safeguarded Newton iteration for the Drude relaxation pole
    /// exhausted its iteration budget.
    RootIterationLimit,
    /// Bath parameters recovered from a pole set failed to reproduce the
    /// inputs; indicates a mis-selected cubic root.
    InversionInconsistent {
        /// Worst relative mismatch over the three recovered parameters.
        rel_error: f64,
    },
    /// The adaptive integrator reached its interval budget before meeting the
    /// requested tolerance. Carries the best estimate obtained so far.
    QuadratureNonConvergence {
        /// Best integral estimate at the point of giving up.
        value: f64,
        /// Error estimate attached to `value`.
        error_estimate: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::PoleSingularity { omega } => {
                write!(f, "response function evaluated on a pole at omega = {omega}")
            }
            Error::OhmicSeriesDivergent => write!(
                f,
                "series/integral diverges for a strictly Ohmic kernel; use a Drude cutoff \
                 or a cutoff-regularized quadrature"
            ),
            Error::OhmicDiscretization => write!(
                f,
                "a strictly Ohmic kernel has unbounded bandwidth and cannot be discretized"
            ),
            Error::ResidueImaginary { magnitude } => write!(
                f,
                "conjugate-pole contributions left a spurious imaginary part of magnitude \
                 {magnitude:e}"
            ),
            Error::RootIterationLimit => {
                write!(f, "relaxation-pole root finder exceeded its iteration budget")
            }
            Error::InversionInconsistent { rel_error } => write!(
                f,
                "pole set does not reproduce the bath parameters (relative error {rel_error:e})"
            ),
            Error::QuadratureNonConvergence { value, error_estimate } => write!(
                f,
                "quadrature did not converge: value {value:e}, error estimate {error_estimate:e}"
            ),
        }
    }
}

impl core::error::Error for Error {}
