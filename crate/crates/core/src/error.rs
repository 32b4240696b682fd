use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into two families: caller mistakes (bad input, unmet
/// preconditions) and internal inconsistencies, which mean an exact
/// computation contradicted a proven bound and therefore indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("malformed surd: {0}")]
    InvalidSurd(String),

    #[error("expected an irrational input, got a rational value")]
    RationalInput,

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("matrix has determinant {0}, expected +1 or -1")]
    NotUnimodular(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("witness vanishes at N = {0}; increase N")]
    BelowThreshold(u64),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for errors that can only arise from an arithmetic bug.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
