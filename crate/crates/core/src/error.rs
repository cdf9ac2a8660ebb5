use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid diagram: {}", .0.join("; "))]
    InvalidDiagram(Vec<String>),
    #[error("arity mismatch: expected {expected:?}, found {found:?}")]
    ArityMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("stratum mismatch: {0}")]
    StratumMismatch(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("invalid algebra: {}", .0.join("; "))]
    InvalidAlgebra(Vec<String>),
    #[error("not proportional to the tripod: {0}")]
    NotProportional(String),
    #[error("inconsistent table: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
