use thiserror::Error;

/// Errors surfaced by table construction, Hankel budgets, extraction and I/O.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("word of length {word} exceeds table length {table}")]
    WordTooLong { word: usize, table: usize },

    #[error(
        "length budget exceeded: operation needs table length >= {needed}, table has {available}"
    )]
    LengthBudgetExceeded { needed: usize, available: usize },

    #[error(
        "condition (a) violated: short-minor rank {rank_found} exceeds dimension bound {bound}"
    )]
    ConditionAViolated { rank_found: usize, bound: usize },

    #[error("condition (b) violated: half-budget minor has rank {found}, expected {expected} (witness word '{word}')")]
    ConditionBViolated {
        expected: usize,
        found: usize,
        word: String,
    },

    #[error("cannot embed dimension {from} into smaller dimension {to}")]
    DimensionShrink { from: usize, to: usize },

    #[error("generator dimension {found} exceeds the declared bound {bound}")]
    DimensionBound { found: usize, bound: usize },

    #[error("{paths} hidden-state paths exceed the enumeration budget {budget}")]
    PathBudgetExceeded { paths: u128, budget: u128 },

    #[error("empty table (length 0) has no letter shift")]
    EmptyTable,

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid word '{word}': {reason}")]
    InvalidWord { word: String, reason: String },

    #[error("invalid scalar '{text}': {reason}")]
    InvalidScalar { text: String, reason: String },

    #[error("invalid {kind}: {reason}")]
    InvalidModel { kind: String, reason: String },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
