use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A distribution or configuration parameter is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The operation is undefined at the requested point (e.g. `F(t) = 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// The integral does not exist as a finite number.
    #[error("divergent integral: {0}")]
    DivergentIntegral(String),

    #[error(
        "quadrature tolerance not reached after {subdivisions} subdivisions \
         (value {value:e}, error estimate {error_estimate:e})"
    )]
    ToleranceNotReached {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
