use thiserror::Error;

use crate::exactlin::Field;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("map is not simplicial: {0}")]
    NonSimplicial(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}
