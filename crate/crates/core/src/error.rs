use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero form has no projective roots")]
    ZeroForm,
    #[error("expected a form of even degree, found degree {0}")]
    OddDegree(usize),
    #[error("expected a form of even degree at least {min}, found degree {found}")]
    DegreeTooSmall { min: usize, found: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("field is not contracting")]
    NotContracting,
    #[error("expected a cubic field, found degree {0}")]
    NotCubic(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the symbol sequence is infinite")]
    InfiniteSequence,
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
