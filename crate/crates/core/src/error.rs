use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet: {0}")]
    Alphabet(String),

    #[error("label sets at positions {position} and {} intersect", position + 1)]
    AdmissibilityViolation { position: usize },

    #[error("rule for generation {generation}: {message}")]
    RuleReference { generation: usize, message: String },

    #[error("unknown system `{0}`")]
    UnknownSystem(String),

    #[error("invalid alpha sequence: {0}")]
    InvalidAlpha(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("segment at generation {generation} exceeds {limit} label sets")]
    SegmentTooLong { generation: usize, limit: usize },

    #[error("action at vertex {position} needs label sets outside the known range")]
    BoundaryUndecidable { position: i64 },

    #[error("word of length {len} exceeds radius {radius}")]
    WordTooLong { len: usize, radius: usize },

    #[error("factor set did not stabilize before generation {max_generation}")]
    NoStabilization { max_generation: usize },

    #[error("vertex {vertex} is not perfectly labeled: {message}")]
    PerfectLabelingViolation { vertex: String, message: String },

    #[error("span {start}..={end} is within {needed} of the ambient boundary (ambient length {len})")]
    BoundaryTooClose { start: usize, end: usize, len: usize, needed: usize },

    #[error("permutations have different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),

    #[error("ambient segment too short: {0}")]
    InsufficientAmbient(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
