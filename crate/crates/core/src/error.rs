//! Error and diagnostic types shared by every module.

use std::fmt;

/// Failures raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A scalar argument fell outside its admissible range.
    #[error("{name} must lie in {range}, got {value}")]
    OutOfRange {
        name: &'static str,
        range: &'static str,
        value: f64,
    },
    /// Any other malformed input.
    #[error("invalid argument: {0}")]
    Invalid(String),
    /// Refinement (node doubling, window doubling) did not settle.
    #[error("quadrature did not converge for {what}: last change {change:e}")]
    NonConvergence { what: String, change: f64 },
    /// A computed result would not fit inside the sampling grid.
    #[error("support overflow: {0}")]
    SupportOverflow(String),
    /// A consistency residual exceeded the tolerance of its grid.
    #[error("insufficient resolution for {what}: residual {residual:e} exceeds {tolerance:e}")]
    Resolution {
        what: String,
        residual: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Non-fatal conditions attached to a computed value.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// A truncated sum or matrix still carries a non-negligible tail.
    Truncation { what: String, tail: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::Truncation { what, tail } => {
                write!(f, "truncation in {what}: tail estimate {tail:e}")
            }
        }
    }
}

/// A value together with the warnings raised while computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnosed<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

impl<T> Diagnosed<T> {
    pub fn clean(value: T) -> Self {
        Self {
            value,
            warnings: Vec::new(),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Diagnosed<U> {
        Diagnosed {
            value: f(self.value),
            warnings: self.warnings,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}
