use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("fall to center: radicand {radicand} for coupling c{index} is negative")]
    FallToCenter { index: usize, radicand: f64 },
    #[error("dimension {0} outside the supported range 3..=7")]
    Dimension(usize),
    #[error("invalid quantum numbers: {0}")]
    QuantumNumbers(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
