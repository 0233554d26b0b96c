use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("edge {{{0},{1}}} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("{0} vertices requested; at most 63 are supported")]
    TooManyVertices(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("order {t} outside the admissible range {lo}..={hi}")]
    OrderOutOfRange { t: usize, lo: usize, hi: usize },
    #[error("clique sum: {0}")]
    CliqueSum(String),
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
    #[error("malformed linear program: {0}")]
    MalformedModel(String),
    #[error("solver deadline exceeded")]
    Timeout,
    #[error("unexpected LP status {0}")]
    UnexpectedStatus(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
