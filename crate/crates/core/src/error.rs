use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("singular point: {0}")]
    Singular(String),

    #[error("stencil touches a singular point: {0}")]
    Stencil(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("{what} did not converge (estimate {estimate:e}, tolerance {tolerance:e})")]
    Convergence {
        what: &'static str,
        estimate: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
