use std::path::PathBuf;

/// Errors produced by topology construction, routing, analysis and the
/// experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("graph is disconnected: node {unreachable} is unreachable from node {from}")]
    Disconnected { from: usize, unreachable: usize },

    #[error("node {node} is out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("step {delta} is not a generatrix step of C({n}; 1, {s2})")]
    InvalidStep { delta: i64, n: usize, s2: usize },

    /// A route did not reach its destination within the hop budget.
    #[error("{algorithm} routing exceeded {hop_limit} hops in C({n}; 1, {s2}) for {src} -> {dst}")]
    Livelock {
        algorithm: String,
        n: usize,
        s2: usize,
        src: usize,
        dst: usize,
        hop_limit: usize,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors caused by bad user input rather than internal failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Invalid(_)
                | Error::NodeOutOfRange { .. }
                | Error::InvalidStep { .. }
                | Error::Disconnected { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
