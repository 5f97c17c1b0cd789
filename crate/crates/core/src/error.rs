use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("coefficient index {index} is beyond truncation order {trunc}")]
    OutOfRange { index: usize, trunc: usize },

    #[error("series constant term is not a unit (must be 1 or -1)")]
    NonUnitConstant,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not in the bijection domain: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}
