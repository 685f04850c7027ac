//! Finite-field arithmetic and dense matrices over `GF(q)`.

mod field;
mod matrix;

pub use field::{next_prime_power_above, prime_power, Field, MAX_ORDER};
pub use matrix::{parse_matrix, GfMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix parse error: {0}")]
    Parse(String),
}
