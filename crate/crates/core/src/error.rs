//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Mismatched matrix or vector dimensions.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// Input outside the domain of an operation (non-Hermitian matrix where a
    /// Hermitian one is required, non-unitary generator, invalid permutation,
    /// NaN entries, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// Unknown operator name.
    #[error("unknown operator: {0}")]
    Lookup(String),

    /// An iterative kernel failed to converge or produced a non-finite value.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A matrix exponential would overflow in double precision.
    #[error("exponent overflow: largest eigenvalue {0} exceeds 700")]
    Overflow(f64),

    /// A constraint set admits no state at all (reference solvers only; the
    /// main solvers report infeasibility through their status field).
    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
