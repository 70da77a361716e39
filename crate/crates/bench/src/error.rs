use simplex_proj::ProjectionError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid distribution spec '{0}'")]
    Spec(String),
    #[error("line {line}: {msg}")]
    Libsvm { line: usize, msg: String },
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{algorithm} failed on seed {seed} with k={k}: {reason}")]
    Solve { algorithm: String, seed: u64, k: usize, reason: String },
    #[error("no baseline for {0}")]
    MissingBaseline(String),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, BenchError>;
