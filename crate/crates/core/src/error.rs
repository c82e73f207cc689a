use alloc::string::String;

/// Errors raised by the exact core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("subset sizes differ: {rows} rows vs {cols} columns")]
    UnequalSubsetSizes { rows: usize, cols: usize },
    #[error("malformed subset: {0}")]
    MalformedSubset(String),
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("the zero vector is not a point of projective space")]
    ZeroVector,
    #[error("row {0} of Z is zero")]
    ZeroRow(usize),
    #[error("invalid chirotope: {0}")]
    InvalidChirotope(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("ground set of size {0} exceeds the supported maximum of 64")]
    GroundTooLarge(usize),
    #[error("enumeration of rank {rank} chirotopes on {n} elements is out of bounds: {reason}")]
    EnumerationTooLarge {
        rank: usize,
        n: usize,
        reason: String,
    },
    #[error(
        "sweep needs {configs} configurations but the budget is {budget}; \
         raise the configuration budget to run it"
    )]
    BudgetExceeded { configs: u64, budget: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("certificate failed re-verification: {0}")]
    CertificateRejected(String),
}

pub type Result<T> = core::result::Result<T, Error>;
