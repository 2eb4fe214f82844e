use thiserror::Error;

/// Errors raised by evaluation, operators and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {re} + {im}i lies outside the open unit disc")]
    Domain { re: f64, im: f64 },
    #[error("reciprocal child evaluates to {modulus:e}, below the singularity threshold")]
    Singularity { modulus: f64 },
    #[error("reciprocal of an expression without a zero-free certificate")]
    Uncertified,
    #[error("power-series division by a constant term of modulus {modulus:e}")]
    DivisionByZero { modulus: f64 },
    #[error("non-finite coefficient at index {index}")]
    NonFinite { index: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
    #[error("quadrature did not converge after {levels} refinement levels")]
    NonConvergence { levels: u32 },
    #[error("degenerate profile: {0}")]
    DegenerateProfile(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
