use thiserror::Error;

/// Errors across the library. Variants carry enough context to map onto the
/// CLI exit-code scheme: invalid inputs vs. resource refusals.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdBothZero,

    #[error("{b} is not invertible modulo {a}: gcd({b}, {a}) = {g}")]
    NotInvertible { b: u64, a: u64, g: u64 },

    #[error("modulus {m} and step {k} must be coprime (gcd = {g})")]
    NotCoprime { m: u64, k: i64, g: u64 },

    #[error("invalid semigroup parameters: {reason}")]
    InvalidParams { reason: String },

    #[error("{what} must be finite and non-negative, got {value}")]
    BadReal { what: &'static str, value: f64 },

    #[error("arithmetic overflow computing {what}")]
    Overflow { what: &'static str },

    #[error("gap enumeration refused: frobenius number {g} exceeds enumeration limit {limit}")]
    GapLimitExceeded { g: u64, limit: u64 },

    #[error("sieve limit {requested} exceeds configured maximum {max}")]
    SieveLimitTooLarge { requested: u64, max: u64 },

    #[error("sieve limit must be at least 2, got {requested}")]
    SieveLimitTooSmall { requested: u64 },

    #[error("query {x} exceeds table limit {limit}")]
    QueryOutOfRange { x: u64, limit: u64 },

    #[error("batch queries must be sorted ascending")]
    UnsortedQueries,

    #[error("interval start {x1} exceeds end {x2}")]
    BadInterval { x1: u64, x2: u64 },

    #[error("prime table too small: need {needed}, have {limit}")]
    TableTooSmall { needed: u64, limit: u64 },

    #[error("oracle scale exceeded: frobenius number {g} > {max}")]
    OracleScaleExceeded { g: u64, max: u64 },

    #[error("li(x) requires x >= 2, got {x}")]
    LiDomain { x: f64 },

    #[error("point outside case grid: {constraint}")]
    OutsideGrid { constraint: String },

    #[error("case {case} has no closed-form point expression")]
    NoPointExpression { case: &'static str },

    #[error("case {case} requires a prime table")]
    TableRequired { case: &'static str },

    #[error("sieve cache invalid: {reason}")]
    CacheInvalid { reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for refusals caused by configured resource limits rather than
    /// malformed input (CLI exit code 3 vs 2).
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::GapLimitExceeded { .. }
                | Error::SieveLimitTooLarge { .. }
                | Error::QueryOutOfRange { .. }
                | Error::TableTooSmall { .. }
                | Error::OracleScaleExceeded { .. }
                | Error::Overflow { .. }
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
