use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lag {lag} out of range for length {len}")]
    LagOutOfRange { lag: usize, len: usize },

    #[error("{divisor} does not divide length {len}")]
    NotDivisible { divisor: usize, len: usize },

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("{t} is not a unit modulo {modulus}")]
    NotUnit { t: usize, modulus: usize },

    #[error("rank {rank} out of range (space size {size})")]
    RankOutOfRange { rank: u128, size: u128 },

    #[error("search space too large for 128-bit ranks")]
    RankOverflow,

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("malformed input {path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{stage} stage: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Wraps an error with the pipeline stage it came from.
    pub fn in_stage(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |e| Error::Stage {
            stage,
            source: Box::new(e),
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Stage { source, .. } => source.exit_code(),
            Error::Verification(_) => 3,
            Error::Io { .. } | Error::Parse { .. } | Error::Json(_) => 4,
            _ => 2,
        }
    }
}
