use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported Cartan type {family}{rank}: {reason}")]
    InadmissibleType {
        family: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("cannot parse Cartan type {0:?}")]
    TypeParse(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not an antichain")]
    NotAntichain,
    #[error("element {0} is not maximal")]
    NotMaximal(usize),
    #[error("element {0} out of range")]
    UnknownElement(usize),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid word symbol {0:?}")]
    InvalidWord(char),
    #[error("operation on an empty flat")]
    EmptyFlat,
    #[error("ring elements belong to different posets")]
    PosetMismatch,
    /// A computed object contradicts a statement that must hold. These are
    /// bugs (or counterexamples), never user errors.
    #[error("internal check failed: {0}")]
    Violation(String),
}

pub type Result<T> = core::result::Result<T, Error>;
