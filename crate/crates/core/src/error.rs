use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    /// The requested group has coordinates outside Q(√2, √5).
    #[error("group {0} is not representable exactly; use the float backend")]
    UnsupportedExact(String),
    #[error("invalid parameters for family {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

impl GroupError {
    pub fn invalid(family: impl Into<String>, reason: impl Into<String>) -> Self {
        GroupError::InvalidParameters {
            family: family.into(),
            reason: reason.into(),
        }
    }
}

/// Error from parsing a group specification such as `duval:33(n=2,r=4,s=1,h=0)`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct SpecParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("invalid spherical triangle: {0}")]
    InvalidTriangle(String),
    #[error("unknown O(3) group label {0:?}")]
    UnknownLabel(String),
    #[error("k and m must be coprime (got k={k}, m={m})")]
    NotCoprime { k: u64, m: u64 },
    #[error("{0}")]
    Domain(String),
}
