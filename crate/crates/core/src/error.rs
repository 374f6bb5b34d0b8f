use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("letter {letter} outside alphabet 1..={n}")]
    LetterOutOfRange { letter: u32, n: usize },

    #[error("invalid column: {0}")]
    InvalidColumn(String),

    #[error("malformed tableau: {0}")]
    MalformedTableau(String),

    #[error("Knuth class exceeds {cap} states")]
    StateCapExceeded { cap: usize },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("rewriting did not terminate within {steps} steps")]
    RewriteStepCap { steps: usize },

    #[error("Morse graph has a cycle through {0}")]
    MorseCycle(String),

    #[error("Morse path budget of {0} steps exhausted")]
    MorseBudget(usize),

    #[error("matching inconsistency: {0}")]
    Matching(String),

    #[error("value not representable in the field: {0}")]
    FieldConversion(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
