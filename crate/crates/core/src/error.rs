use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dependent input")]
    DependentInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("algebra mismatch")]
    AlgebraMismatch,
    #[error("pairing mismatch")]
    PairingMismatch,
    #[error("identity in S")]
    IdentityInSubset,
    #[error("not ad-invariant")]
    NotAdInvariant,
    #[error("empty generating subset")]
    EmptySubset,
    #[error("unknown group element `{0}`")]
    UnknownElement(String),
    #[error("inconsistent calculus: relation `{0}` fails")]
    InconsistentCalculus(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("Lie derivative index must be a vector field")]
    NotAVectorField,
    #[error("pairing between forms and dual elements is degenerate in degree {0}")]
    DegeneratePairing(usize),
    #[error("maximal degree must be at least {0}")]
    DegreeTooSmall(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
