use alloc::string::String;

use crate::speclang::ParseError;

/// Errors raised by the group engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {degree} exceeds the cap of {cap} points")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: String, cap: u64 },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("invalid block system: {0}")]
    InvalidSystem(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("group is not solvable")]
    NotSolvable,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("unsupported field GF({p}^{m})")]
    UnsupportedField { p: u32, m: u32 },
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("subgroup series did not terminate within {0} steps")]
    SeriesTooLong(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
