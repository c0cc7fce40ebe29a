use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different fields ({left} vs {right})")]
    MixedField { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("matrix rows have different lengths")]
    RaggedMatrix,

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("sequence representations differ (finite vs periodic)")]
    RepresentationMismatch,

    #[error("period lattices differ: {left:?} vs {right:?}")]
    PeriodMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("invalid periods: {0}")]
    InvalidPeriods(String),

    #[error("kernel computation requires an exact field, got {0}")]
    FloatFieldUnsupported(String),

    #[error("syntax error at byte {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },

    #[error("variable index {index} out of range 1..={rank} at byte {pos}")]
    VariableIndexOutOfRange { pos: usize, index: u64, rank: usize },

    #[error("decimal coefficient at byte {pos} is only allowed in the float field")]
    DecimalInExactField { pos: usize },

    #[error("zero denominator at byte {pos}")]
    ZeroDenominator { pos: usize },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("entry ({row}, {col}): {source}")]
    Entry {
        row: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("duplicate index {0:?}")]
    DuplicateIndex(Vec<i64>),

    #[error("bad value token {token:?} on line {line}")]
    BadValueToken { line: usize, token: String },

    #[error("bad CSV row on line {line}: {reason}")]
    BadRow { line: usize, reason: String },

    #[error("not a binary PGM (P5) file")]
    BadMagic,

    #[error("malformed PGM header: {0}")]
    BadHeader(String),

    #[error("truncated pixel data: expected {expected} bytes, found {found}")]
    TruncatedPixelData { expected: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
