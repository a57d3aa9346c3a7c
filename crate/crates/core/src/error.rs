use thiserror::Error;

/// Errors raised by constructors and analysis operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size {requested} exceeds the cap of {cap}")]
    SizeCap { requested: u128, cap: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("table shape: {0}")]
    TableShape(String),

    #[error("axiom '{axiom}' fails at {elements:?}")]
    AxiomViolation {
        axiom: &'static str,
        elements: Vec<usize>,
    },

    #[error("element {element} out of range (size {size})")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("subset is not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("subset is not a submodule: {0}")]
    NotASubmodule(String),

    #[error("ideal in position {0} is not prime")]
    NotPrimeIdeal(usize),

    #[error("objects live over different structures: {0}")]
    Mismatch(&'static str),

    #[error("operation requires a nonzero module")]
    ZeroModule,

    #[error("operation requires a nonzero ring")]
    ZeroRing,

    #[error("monoid hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
