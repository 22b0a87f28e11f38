//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Spinor index addresses a slot outside the 2M available ones.
    #[error("malformed spinor index: pair {pair} (barred={barred}) exceeds {n_pairs} Kramers pairs")]
    MalformedIndex { pair: u32, barred: bool, n_pairs: u32 },

    /// A size cap was exceeded (open-shell count, Fock dimension, ...).
    #[error("capacity exceeded: {what} = {got}, cap = {cap}")]
    Capacity { what: &'static str, got: usize, cap: usize },

    /// An input violated a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An iterative algorithm failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A verification predicate did not hold within tolerance.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Internal consistency assertion failed (a bug, not bad input).
    #[error("internal consistency error: {0}")]
    Internal(String),

    /// A k=0 eigenvector has no uniquely defined pairing partner.
    #[error("pairing partner undefined: vector {index} carries k = 0")]
    UndefinedPartner { index: usize },

    /// A state vector does not live on the expected determinant basis.
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    /// A state vector is not normalized within tolerance.
    #[error("state not normalized: |norm - 1| = {deviation:e}")]
    Unnormalized { deviation: f64 },
}
