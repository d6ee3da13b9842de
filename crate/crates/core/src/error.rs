//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// `d` may not be `p^k` or `2 p^k` (nor below 3 in characteristic zero).
    #[error("degree {d} is not admissible in characteristic {characteristic}: d must not be p^k times 0, 1 or 2")]
    DegreeNotAdmissible { d: u32, characteristic: u64 },

    /// A Gröbner computation hit a configured cap; no verdict was produced.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Randomized certificate search failed for this seed; another seed may succeed.
    #[error("span deficient for seed {seed}: rank {rank} < {target}")]
    SpanDeficient {
        seed: u64,
        rank: usize,
        target: usize,
    },

    #[error("field does not contain the required element: {0}")]
    MissingRoot(String),

    /// Two independent computations disagreed.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
