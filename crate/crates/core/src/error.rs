use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: u64, max: u64 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element representation {repr} out of range for GF({q})")]
    ElementOutOfRange { repr: u64, q: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parity-check matrix has rank {rank}, expected full row rank {rows}")]
    RankDeficient { rank: usize, rows: usize },
    #[error("enumeration of {needed} visits exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid construction: {0}")]
    Construction(String),
    #[error("inconsistent prefix: computed B_{weight} = {value} is negative")]
    InconsistentPrefix { weight: usize, value: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
