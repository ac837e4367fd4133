use thiserror::Error;

/// Errors raised by the numeric and verification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A request exceeds a configured size or precision ceiling.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two independent evaluation routes disagree beyond their combined bounds.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    /// The series extrapolation did not settle.
    #[error("extrapolation did not converge: {0}")]
    NonConvergent(String),

    /// Quadrature exhausted its level budget or met a NaN.
    #[error("quadrature failed: {0}")]
    Quadrature(String),

    /// Malformed textual input (expressions, decimal strings, ranges).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that signal a precision or size ceiling rather than a
    /// numerical disagreement.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_))
    }
}
