use alloc::string::String;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("content undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: String, hi: String },
    #[error("cannot evaluate at {0}")]
    BadEvaluationPoint(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("support condition fails: Log f is not contained in Log Q_{stage}")]
    Membership { stage: usize },
    #[error("invalid sequence entry {index}: {reason}")]
    InvalidSequence { index: usize, reason: String },
    #[error("stage {stage} is beyond the available data ({available})")]
    StageUnavailable { stage: usize, available: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("generators use different symbol bases")]
    MixedBasis,
    #[error("not coprime: {0}")]
    NotCoprime(String),
    #[error("linearly dependent input")]
    Dependent,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("approximation failed after {attempts} attempts: {detail}")]
    ApproximationExhausted { attempts: u32, detail: String },
    #[error("vertex {level}.{index} is not materialized")]
    NotMaterialized { level: usize, index: usize },
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = core::result::Result<T, Error>;
