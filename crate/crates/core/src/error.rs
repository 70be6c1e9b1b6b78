use crate::composition::AlgebraKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("mismatched algebras: {0} and {1}")]
    AlgebraMismatch(AlgebraKind, AlgebraKind),
    #[error("operation undefined on the zero element")]
    ZeroElement,
    #[error("degenerate Gram matrix")]
    DegenerateGram,
    #[error("element is not integral: {0}")]
    NotIntegral(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether the error stems from malformed user input rather than a domain violation.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
