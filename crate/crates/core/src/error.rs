//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by machine construction, validation, and analysis.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("unknown symbol `{symbol}` (alphabet: {alphabet:?})")]
    UnknownSymbol {
        symbol: String,
        alphabet: Vec<String>,
    },

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("matrix is not stochastic: {0}")]
    NotStochastic(String),

    #[error("invalid state vector: {0}")]
    InvalidStateVector(String),

    #[error("power iteration did not converge within {cap} iterations")]
    NoConvergence { cap: usize },

    #[error("expected a single recurrent class, found {n}: {classes:?}", n = classes.len())]
    MultipleRecurrentClasses { classes: Vec<Vec<String>> },

    #[error("operation requires a deterministic machine: {0}")]
    Nondeterministic(String),

    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    #[error("invalid protocol: {0}")]
    InvalidProtocol(String),

    #[error("inconsistent transition set: {0}")]
    InconsistentTransitions(String),

    #[error("stationary state is not a fixed point: {0}")]
    FixedPointViolation(String),

    #[error("word length mismatch: {0}")]
    LengthMismatch(String),

    #[error("{words} words of length {length} exceed the enumeration cap of {cap}")]
    EnumerationCap {
        words: u128,
        length: usize,
        cap: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
