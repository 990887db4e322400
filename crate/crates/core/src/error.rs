use std::path::PathBuf;

/// Errors produced anywhere in the clustering toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("trajectory has no annual counts")]
    EmptyTrajectory,

    #[error("degenerate trajectory: no citations in the window")]
    DegenerateTrajectory,

    #[error("invalid window length {0}")]
    InvalidWindow(i64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("unknown archetype `{0}` (expected ER-RD, ER-SD, DR-ND or DR-SD)")]
    UnknownArchetype(String),

    #[error("k = {k} is invalid for {n} objects")]
    InvalidK { k: usize, n: usize },

    #[error("no credible base clusters were produced; try a larger epsilon")]
    NoBaseClusters,

    #[error("every base cluster is isolated in the similarity graph; automatic k* needs edges, try a larger epsilon")]
    IsolatedGraph,

    #[error("paper id mismatch: {0}")]
    IdMismatch(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::UnknownArchetype(_)
            | Error::IdMismatch(_)
            | Error::Config(_)
            | Error::InvalidParameter(_)
            | Error::InvalidWindow(_) => 2,
            Error::EmptyCorpus => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
