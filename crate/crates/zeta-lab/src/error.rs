//! Error types shared by every module in the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested at a pole of the function.
    #[error("pole error: {0}")]
    Pole(String),

    /// A quadrature node came too close to a pole of the integrand.
    #[error("pole proximity: {0}")]
    PoleProximity(String),

    /// A value left the representable exponent range.
    #[error("range error: {0}")]
    Range(String),

    /// An operation produced a NaN or infinity.
    #[error("non-finite result in {0}")]
    NonFinite(String),

    /// The configured term budget was exhausted before the requested
    /// accuracy was reached.
    #[error("budget error: {0}")]
    Budget(String),

    /// Adaptive quadrature failed to converge within its refinement budget.
    #[error("quadrature error: {0}")]
    Quadrature(String),

    /// Division by a vanishing denominator.
    #[error("division error: {0}")]
    Division(String),

    /// Cancellation exhausted the working precision; retry with at least
    /// `needed_digits` decimal digits.
    #[error("precision error: {context} (need >= {needed_digits} digits)")]
    Precision { context: String, needed_digits: u32 },

    /// Root search did not converge.
    #[error("search error: {0}")]
    Search(String),

    /// The derivative at the iterate is numerically zero.
    #[error("degenerate derivative: {0}")]
    Degenerate(String),

    /// Invalid run configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
