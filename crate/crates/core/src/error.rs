use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot elevate more than M-1 zero eigenvalues (h = {h}, M = {m})")]
    TooManyElevated { h: usize, m: usize },

    #[error("edge density undefined for a graph without edges")]
    UndefinedDensity,

    #[error("modularity undefined for a graph without edges")]
    UndefinedModularity,

    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:.3e})"
    )]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("config: {0}")]
    Config(String),

    #[error("dataset file not found: {}", .0.display())]
    MissingDataset(PathBuf),

    #[error("heatmap: {0}")]
    Heatmap(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
