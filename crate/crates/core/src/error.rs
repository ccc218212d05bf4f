use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("capacity exceeded: {what} needs {required} basis elements, budget is {budget}")]
    Capacity { what: String, required: u128, budget: u128 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not a polynomial character: {0}")]
    NotPolynomialCharacter(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
