//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by weight validation, adjoint construction, and the
/// numerical routines built on top of them.
#[derive(Debug, Error)]
pub enum Error {
    /// The candidate weight deviates from its conjugate transpose beyond
    /// 1e-10 relative.
    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    /// The candidate weight has an eigenvalue below the negative rank
    /// threshold.
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.6e})")]
    NotPsd { eigenvalue: f64 },

    /// Every eigenvalue fell below the rank threshold: the unit sphere of
    /// the seminorm is empty and no quantity is defined.
    #[error("weight is numerically zero; the unit sphere of the seminorm is empty")]
    ZeroWeight,

    /// Mismatched dimensions between a weight, an operator, or a vector.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A matrix must be square for this operation.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// The operator does not map the weight's null space into itself, so it
    /// admits no adjoint with respect to the weight.
    #[error("operator does not admit a weighted adjoint (null space of the weight is not invariant)")]
    NotInBa,

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// An unrecognized bound identifier was requested.
    #[error("unknown bound id: {0}")]
    UnknownBoundId(String),

    /// A vector required to have unit seminorm does not.
    #[error("vector does not have unit seminorm (norm {norm:.6e})")]
    NotUnitVector { norm: f64 },

    /// The operator is not positive with respect to the weight.
    #[error("operator is not positive with respect to the weight")]
    NotAPositive,

    /// The supplied operator fails the sampled isometry checks.
    #[error("operator is not unitary with respect to the weight")]
    NotAUnitary,

    /// A quantity that is nonnegative by construction came out negative
    /// beyond tolerance; recorded instead of being clamped.
    #[error("tolerance failure in {context}: value {value:.6e}")]
    ToleranceFailure { context: &'static str, value: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
