use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;
use crate::scalar::ScalarError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    /// A constructor hypothesis failed; `identity` names the equation.
    #[error("hypothesis `{identity}` fails: {witness}")]
    Hypothesis { identity: String, witness: String },
    /// Two computations that must agree did not.
    #[error("cross-check mismatch: {0}")]
    CrossCheck(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid example specification: {0}")]
    Spec(String),
}

impl Error {
    pub fn hypothesis(identity: impl Into<String>, witness: impl Into<String>) -> Error {
        Error::Hypothesis { identity: identity.into(), witness: witness.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
