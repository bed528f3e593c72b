use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Core(#[from] cetest::Error),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: line {line}, column {column}: {msg}")]
    Parse {
        path: String,
        line: u64,
        column: usize,
        msg: String,
    },

    #[error("{0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, SimError>;

pub(crate) fn io_err(path: &std::path::Path, source: std::io::Error) -> SimError {
    SimError::Io {
        path: path.display().to_string(),
        source,
    }
}
