use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("letter count mismatch: {0} vs {1}")]
    LetterMismatch(usize, usize),
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("nonzero constant term")]
    NonzeroConstant,
    #[error("constant term is not 1")]
    NotUnipotent,
    #[error("wrong number of images: expected {expected}, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("element is not primitive (degree {0})")]
    NotPrimitive(usize),
    #[error("target has valuation 0")]
    ZeroValuation,
    #[error("index out of range: {0}")]
    Index(String),
    #[error("ill-formed strand map: {0}")]
    StrandMap(String),
    #[error("not tangential at degree {0}")]
    NotTangential(usize),
    #[error("inconsistent linear system at degree {0}: {1}")]
    Inconsistent(usize, String),
    #[error("not a cocycle (degree {0})")]
    NotCocycle(usize),
    #[error("coboundary obstruction at degree {0}")]
    Obstruction(usize),
    #[error("kernel guard failed for t_{0} at degree {1}: kernel dimension {2}")]
    KernelGuard(usize, usize, usize),
    #[error("braid is not pure")]
    NotPure,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cap mismatch: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("cap {0} exceeds supported maximum {1}")]
    CapTooLarge(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
