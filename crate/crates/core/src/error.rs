use thiserror::Error;

/// Library-wide error type. Variants are grouped by how callers react:
/// fix the input, shrink the input, retry generation, or file a bug.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("generation failed: {0}")]
    GenerationFailed(String),

    /// The forbidden sets admit no proper two-coloring, so the exhaustive
    /// two-color solver has no candidate cuts at all.
    #[error("no proper two-coloring of the forbidden-set vertices exists")]
    NoProperTwoColoring,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
