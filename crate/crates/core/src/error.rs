use thiserror::Error;

use crate::bundlealg::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed label: {0:?} is not weakly decreasing")]
    MalformedLabel(Vec<i64>),
    #[error("non-canonical label: last entry of {0:?} must be 0")]
    NonCanonicalLabel(Vec<i64>),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("not a representation: coefficient {coefficient} at weight {weight}")]
    NotARepresentation { weight: String, coefficient: String },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("Lefschetz map not injective at bigrade ({p},{q})")]
    LefschetzNotInjective { p: i32, q: i32 },
    #[error("primitive part needs a wedge power of a polarized weight-one system: {0}")]
    NotPrimitiveInput(String),
    #[error("rank {rank} exceeds resource limit {limit}")]
    ResourceLimit { rank: String, limit: usize },
    #[error("flatness violation: {0}")]
    FlatnessViolation(String),
    #[error("not a sub-system: {0}")]
    NotASubsystem(String),
    #[error("unknown strand {name} at dimension {n}")]
    UnknownStrand { name: String, n: usize },
    #[error("weight ({a},{b}) is not regular")]
    NotRegularWeight { a: u32, b: u32 },
    #[error("wrong weight: {0}")]
    WrongWeight(String),
    #[error("unknown axiom {0:?}")]
    UnknownAxiom(String),
}

impl Error {
    /// Coarse category used by front-ends to pick exit codes.
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse(_) | Error::UnknownAxiom(_) => ErrorCategory::Parse,
            Error::ResourceLimit { .. } => ErrorCategory::Resources,
            _ => ErrorCategory::Eval,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Parse,
    Eval,
    Resources,
}
