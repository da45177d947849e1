use thiserror::Error;

/// Errors raised by field evaluation, transforms and the check harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported Bessel order: 2nu = {0} is outside the supported range")]
    UnsupportedOrder(i64),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("evaluation point ({x}, {y}, {z}) lies inside the singular axis tube")]
    AxisSingularity { x: f64, y: f64, z: f64 },

    #[error("quadrature failed: {what} (estimated error {estimate:e})")]
    QuadratureFailure { what: String, estimate: f64 },

    #[error("configuration error: {0}")]
    ConfigError(String),

    #[error("i/o error: {0}")]
    IoError(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoError(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
