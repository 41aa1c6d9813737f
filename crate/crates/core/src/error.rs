use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("reducible fusion data: {0}")]
    Reducible(String),
    #[error("generator {0:?} is not symmetrically self-dual")]
    NotSelfDual(String),
    #[error("unknown simple object {0:?}")]
    UnknownSimple(String),
    #[error("free product undefined at this size: graph has {0} edge(s), need at least 2")]
    TooFewEdges(u64),
    #[error("graph is not connected: {0}")]
    Disconnected(String),
    #[error("decomposition is not normalized")]
    NotNormalized,
    #[error("projection {0:?} not present")]
    MissingMarker(String),
    #[error("truncation too small: need n < N (n = {n}, N = {size})")]
    TruncationTooSmall { n: usize, size: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Parse-type failures (bad input files or syntax) as opposed to domain errors.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Json(_) | Error::Io(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
