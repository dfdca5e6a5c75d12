use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("denominator {0} is not a product of r, r+x_N and r-x_N")]
    UnsupportedDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation point lies on a pole")]
    Pole,
    #[error("exact point does not satisfy r^2 = sum x_i^2 with r >= 0")]
    NotOnCone,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator coefficient depends on momenta")]
    MomentumInCoefficient,
    #[error("computation cancelled")]
    Cancelled,
}
