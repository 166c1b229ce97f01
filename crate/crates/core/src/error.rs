use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("instance has no keys")]
    EmptyInstance,
    #[error("key {key}: negative weight {value}")]
    NegativeWeight { key: usize, value: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid sub-problem (i={i}, j={j}, h={h}) for n={n}")]
    InvalidSubproblem { i: usize, j: usize, h: usize, n: usize },
    #[error("sub-problem (i={i}, j={j}, h={h}) has fewer than two keys")]
    TooFewKeys { i: usize, j: usize, h: usize },
    #[error("sub-problem (i={i}, j={j}, h={h}) admits no less-than cut")]
    NoValidCut { i: usize, j: usize, h: usize },
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("instance too large: n={n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("key {key}: weight {value} outside [{lo}, {hi}]")]
    WeightOutOfRange { key: usize, value: String, lo: String, hi: String },
    #[error("key {key} has zero weight; rescale or reject the instance")]
    ZeroWeight { key: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("leaf key {0} is not in the instance")]
    UnknownKey(usize),
    #[error("memory budget exceeded: need ~{need_mb} MB, limit {limit_mb} MB")]
    MemoryBudget { need_mb: u64, limit_mb: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
