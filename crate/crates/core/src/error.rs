use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("basis error: {0}")]
    Basis(String),
    #[error("sign undefined: {0}")]
    SignUndefined(String),
    #[error("element is not in the peak algebra: {0}")]
    NotInPeakAlgebra(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
