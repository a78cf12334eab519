//! Exact cyclotomic arithmetic, SL(2,Z) representations, candidate modular
//! data and fusion rings.

pub mod exactnum;
pub mod fusionring;
pub mod modulardata;
pub mod slrep;

pub use exactnum::ExactError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// An internal consistency check failed; valid inputs never reach this.
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
