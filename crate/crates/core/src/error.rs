use thiserror::Error;

/// Errors raised by the estimators, statistics and samplers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a numerical function.
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    /// A caller-side precondition was not met (sizes, dimensions, counts).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The input collapses to a degenerate configuration (e.g. all pseudo-observations equal).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Two points coincide, so a k-th neighbor distance is zero.
    #[error("duplicate points: zero k-th neighbor distance at indices {indices:?}; enable tie jitter")]
    DuplicatePoints { indices: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain {
        func,
        msg: msg.into(),
    }
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
