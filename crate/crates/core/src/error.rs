use thiserror::Error;

/// Errors raised by the exact arithmetic layer and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("elements belong to different fields")]
    OwnerMismatch,

    #[error("malformed input: {0}")]
    InvalidInput(String),

    #[error("polynomial is reducible: nontrivial factor {factor}")]
    Reducible { factor: String },

    #[error("polynomial is not squarefree; pass its squarefree part {squarefree_part} instead")]
    NotSquarefree { squarefree_part: String },

    #[error("capacity exceeded: {what} is {actual}, cap is {cap}")]
    Capacity {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("undecided at precision cap of {bits} bits: {candidate}")]
    Undecided { bits: u32, candidate: String },

    #[error("extension is not normal")]
    NotNormal,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = GaloisError> = std::result::Result<T, E>;
