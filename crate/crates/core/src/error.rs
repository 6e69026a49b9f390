use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not singular (determinant {0})")]
    NotSingular(i64),

    #[error("entry {entry} exceeds the bound k = {bound}")]
    EntryOutOfBound { entry: i64, bound: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration of (2k+1)^4 = {cells} matrices exceeds the limit {limit}")]
    EnumerationTooLarge { cells: u128, limit: u128 },

    #[error("internal count inconsistency: {0}")]
    Inconsistent(String),

    #[error("quadrature did not reach tolerance {tol:e} within {budget} evaluations (estimate {estimate:e})")]
    QuadratureBudget { tol: f64, budget: usize, estimate: f64 },

    #[error("histogram layout mismatch: {0}")]
    BinLayout(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
