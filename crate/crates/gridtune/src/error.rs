//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by model construction and analysis.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Invalid network or model construction input (disconnected graph,
    /// bad line data, dimension mismatch, ...).
    #[error("construction error: {0}")]
    Construction(String),

    /// A transfer function was evaluated at a pole or outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Virtual inertia with nonzero frequency-measurement noise has an
    /// unbounded H2 norm; the state-space realization would differentiate
    /// white noise.
    #[error("virtual inertia with frequency noise k_omega > 0 has unbounded H2 norm")]
    UnboundedNoise,

    /// Malformed input to a numeric routine (asymmetric matrix, empty grid, ...).
    #[error("input error: {0}")]
    Input(String),

    /// An operation that assumes homogeneous per-bus parameters received
    /// heterogeneous ones.
    #[error("homogeneity error: {0}")]
    Homogeneity(String),

    /// A model that must be stable is not: a matrix with an eigenvalue
    /// above the Hurwitz tolerance (carried when known), or a delayed loop
    /// unstable where stability was required.
    #[error("stability error: {message}")]
    Stability {
        message: String,
        eigenvalue: Option<Complex64>,
    },

    /// No finite optimizer exists (e.g. optimal inverter gain with zero
    /// measurement noise).
    #[error("unbounded optimum: {0}")]
    UnboundedOptimum(String),

    /// The Nyquist locus passes too close to the critical point to decide
    /// a winding number.
    #[error("marginal stability: Nyquist locus within {distance:e} of -1")]
    MarginalStability { distance: f64 },

    /// Config text could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Config parsed but violates the schema; one entry per violation,
    /// each naming the offending field.
    #[error("validation error: {}", violations.join("; "))]
    Validation { violations: Vec<String> },

    /// A numeric routine failed to converge or to meet its residual bound.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Report files could not be written.
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn unstable_eigenvalue(eigenvalue: Complex64) -> Self {
        Error::Stability {
            message: format!(
                "eigenvalue {eigenvalue} has real part {:e} >= -1e-9",
                eigenvalue.re
            ),
            eigenvalue: Some(eigenvalue),
        }
    }

    pub(crate) fn unstable(message: impl Into<String>) -> Self {
        Error::Stability {
            message: message.into(),
            eigenvalue: None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
