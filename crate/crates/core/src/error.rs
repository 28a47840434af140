use thiserror::Error;

use crate::pauli::PropParseError;

/// Errors raised by the logic engine.
///
/// System and proposition indices carried by these variants are 1-based so
/// they can be shown to users unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] PropParseError),

    #[error("cannot parse transcript at step {step}: {reason}")]
    TranscriptParse { step: usize, reason: String },

    #[error("cannot parse formula at position {position}: {reason}")]
    FormulaParse { position: usize, reason: String },

    #[error("dimension mismatch: expected {expected} systems, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("system index {index} is out of range for {n} systems")]
    TargetOutOfRange { index: usize, n: usize },

    #[error("CZ needs two distinct systems, got {index} twice")]
    RepeatedTarget { index: usize },

    #[error("atom {0} has no assigned truth value")]
    MissingAtom(usize),

    #[error("{atoms} atoms exceed the exhaustive-check limit of {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },

    #[error("{0} is trivial; it carries no measurement")]
    TrivialProposition(String),

    #[error("{first} and {second} are the same question up to sign")]
    SameQuestion { first: String, second: String },

    #[error("propositions {first} and {second} are incompatible")]
    Incompatible { first: usize, second: usize },

    #[error("proposition {index} depends on the preceding ones")]
    Dependent { index: usize },

    #[error("{0} contradicts the current knowledge")]
    Contradiction(String),

    #[error("{prop} is incompatible with {generator}; measure it instead")]
    IncompatibleAssertion { prop: String, generator: String },

    #[error("{generators} generators cannot be independent on {n} systems")]
    TooManyGenerators { generators: usize, n: usize },

    #[error("{generators} generators exceed the closure enumeration limit of {limit}")]
    ClosureTooLarge { generators: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
