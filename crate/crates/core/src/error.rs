use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("agent {agent} ({name}): invalid weight {text:?}")]
    InvalidWeight {
        agent: usize,
        name: String,
        text: String,
    },

    #[error("agent {agent} ({name}): non-positive weight {text}")]
    NonPositiveWeight {
        agent: usize,
        name: String,
        text: String,
    },

    #[error("valuation row {agent}, column {good}: non-binary entry {value}")]
    NonBinaryValuation {
        agent: usize,
        good: usize,
        value: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("instance must have at least one agent")]
    NoAgents,

    #[error("duplicate good name {0:?}")]
    DuplicateGood(String),

    #[error("unknown good {0:?}")]
    UnknownGood(String),

    #[error("good {good} appears more than once in the allocation")]
    GoodAssignedTwice { good: usize },

    #[error("good index {good} out of range (m = {m})")]
    GoodOutOfRange { good: usize, m: usize },

    #[error("agent index {agent} out of range (n = {n})")]
    AgentOutOfRange { agent: usize, n: usize },

    #[error("good {good} is already allocated")]
    GoodAlreadyAllocated { good: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("weight exponent {0} does not fit in 32 bits")]
    ExponentOverflow(String),

    #[error("search space {size} exceeds the configured limit {limit}")]
    SearchSpaceExceeded { size: String, limit: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
