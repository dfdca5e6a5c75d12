use qkepler_symbolic::SymError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension N = {0} is outside the supported range 3..=7")]
    Dimension(usize),
    #[error(transparent)]
    Symbolic(#[from] SymError),
}
