use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax or content error in one of the text formats, positioned at a
/// 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("k = {k} outside supported range {min}..={max}")]
    ColorsOutOfRange { k: u32, min: u32, max: u32 },

    #[error("label {0} is not live in the input table")]
    LabelNotLive(u32),

    #[error("dp table over {labels} live labels with radix {radix} exceeds {limit} entries")]
    TableTooLarge { labels: usize, radix: u64, limit: usize },

    #[error("invalid tree decomposition: {0}")]
    Decomposition(String),

    #[error("gadget: {0}")]
    Gadget(String),

    #[error("reduction: {0}")]
    Reduction(String),

    #[error("oracle guard exceeded: {0}")]
    OracleGuard(String),
}
