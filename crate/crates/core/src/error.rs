use thiserror::Error;

/// Errors raised by family construction, parsing, verification and search.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set size {0} is outside 1..=64")]
    GroundSize(u32),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("element {elem} exceeds n={n}")]
    ElementOutOfRange { elem: u32, n: u32 },
    #[error("ground set mismatch: {0} vs {1}")]
    GroundMismatch(u32, u32),
    #[error("state space exceeded cap of {0}")]
    Overflow(usize),
    #[error("{0} is not a member of the family")]
    NotMember(String),
    #[error("family is not union-free: {0}")]
    NotUnionFree(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;
