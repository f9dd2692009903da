use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// The Gram matrix `H^H H` of a channel draw is singular to working
    /// precision. Callers resample the channel.
    #[error("singular Gram matrix (relative pivot {pivot:e})")]
    SingularGram { pivot: f64 },

    /// `Z` is a point mass at zero (`K = 1` or `epsilon = 1`).
    #[error("interference term is degenerate (K = {k}, epsilon = {epsilon})")]
    DegenerateZ { k: usize, epsilon: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("empty sample set")]
    EmptySamples,

    #[error("samples have zero-width support (all equal to {0})")]
    ZeroWidthSupport(f64),

    #[error("config error at `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { field: field.into(), message: message.into() }
    }

    /// Process exit code used by the CLI: 1 for configuration and I/O
    /// problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Io(_) | Error::InvalidParameter(_) => 1,
            _ => 2,
        }
    }
}
