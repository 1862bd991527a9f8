use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("control signal has {got} nodes, the time grid needs {expected}")]
    GridMismatch { expected: usize, got: usize },

    #[error("control value {value} at node {index} is outside [0, 1]")]
    ControlOutOfRange { index: usize, value: f64 },

    #[error("invalid model parameter `{name}`: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("objective vectors have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),

    #[error("at least two weight vectors are required, got {0}")]
    TooFewWeights(usize),

    #[error("differential evolution needs distinct indices, got {0:?}")]
    IndicesNotDistinct([usize; 4]),

    #[error("population of {size} cannot be truncated to {mu}")]
    PopulationTooSmall { size: usize, mu: usize },

    #[error("no values to aggregate")]
    EmptyInput,

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("missing decision-vector sidecar `{0}`")]
    MissingSidecar(PathBuf),

    #[error("I/O error on `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by the filesystem rather than by the inputs.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
