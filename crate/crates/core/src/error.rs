use thiserror::Error;

/// Errors produced by sequence, register and code operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is out of range (expected 2..=255)")]
    BadModulus(u32),

    #[error("element {value} at index {index} is not in Z_{modulus}")]
    ElementOutOfRange { index: usize, value: u32, modulus: u8 },

    #[error("sequence must not be empty")]
    Empty,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u8, right: u8 },

    #[error("block length {block} does not divide sequence length {len}")]
    BlockMismatch { block: usize, len: usize },

    #[error("search space of {size} exceeds the limit of {limit}")]
    GuardExceeded { size: u128, limit: u128 },

    #[error("feedback does not define a permutation of the state space")]
    NotPermutation,

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("constructed code failed verification: {0}")]
    VerificationFailed(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
