use thiserror::Error;

/// Errors shared across the crate. Validation failures carry the witness
/// elements so callers can report exactly what went wrong.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("S is not closed under multiplication: {a} * {b} = {product} is not in S")]
    NotClosed { a: usize, b: usize, product: usize },

    #[error("N is not a nilpotent ideal: {0}")]
    NotNilpotentIdeal(String),

    #[error("S is not a transversal to N: coset of {coset_rep} meets S in {count} elements")]
    NotTransversal { coset_rep: usize, count: usize },

    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("vector {index} is not a tensor product: 2x2 minor at rows ({r0},{r1}), cols ({c0},{c1}) does not vanish")]
    NotAProduct {
        index: usize,
        r0: usize,
        r1: usize,
        c0: usize,
        c1: usize,
    },

    #[error("inconsistent pair labeling: {0}")]
    Labeling(String),

    #[error("file format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
