use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Polynomial or space parameters outside their admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An argument outside the domain of the function (e.g. `|z| > 1`).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative numerical method failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A parsed document violates an invariant; `path` locates the field.
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },

    /// Inputs are individually valid but cannot be combined this way.
    #[error("usage error: {0}")]
    Usage(String),

    /// The space has no numeric point model.
    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),

    /// A zero coefficient sequence where a nonzero one is required.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}
