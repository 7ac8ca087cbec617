use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty generator set")]
    EmptyGenerators,

    #[error("point {point} lies outside the window {window}")]
    OutsideWindow { point: String, window: String },

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("window misconfiguration: {0}")]
    WindowMisconfigured(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("invalid rank {rank} for root system of type {kind}")]
    InvalidRank { kind: String, rank: usize },

    #[error("{0} is not a root of the system")]
    NotARoot(String),

    #[error("zero vector where a nonzero root is required")]
    ZeroVector,

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("invalid matrix size N={0}; sl_N requires N >= 2")]
    InvalidMatrixSize(usize),

    #[error("element is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("element does not lie in the algebra: {0}")]
    NotInAlgebra(String),

    #[error("unknown weight {0}")]
    UnknownWeight(String),

    #[error("subgroup index {0} exceeds the enumeration limit")]
    IndexTooLarge(String),

    #[error("subgroups have different ranks; the union is not a finite coset union")]
    IncommensurableSubgroups,

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("invalid shift: {0}")]
    InvalidShift(String),

    #[error("normalization failed: {0}")]
    NormalizationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}
