use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error at byte {offset}: {message} (near `{token}`)")]
    Parse {
        offset: usize,
        token: String,
        message: String,
    },

    #[error("{op} is not available for {group}")]
    Unsupported { op: &'static str, group: String },

    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("resource ceiling exceeded: {what} = {value} > {limit}")]
    Resource {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("not a sub-coalgebra: {0}")]
    NotSubcoalgebra(String),

    #[error("coefficient outside the coalgebra: {0}")]
    CoefficientOutside(String),

    #[error("growth analysis: {0}")]
    Growth(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
