use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Hermite degree {n} exceeds the supported maximum {max}")]
    DegreeTooLarge { n: usize, max: usize },

    #[error("H_n(x) overflowed at degree {degree} (x = {x})")]
    Overflow { degree: usize, x: f64 },

    #[error("delta must satisfy 0 <= delta < inf, got {0}")]
    InvalidDelta(f64),

    #[error("gamma must satisfy gamma > sqrt(pi)/2 = {bound:.10}, got {gamma}")]
    InvalidGamma { gamma: f64, bound: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("quadrature node count must lie in 1..=200, got {0}")]
    NodeCount(usize),

    #[error("non-finite value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },

    #[error("rule with {nodes} nodes is not exact for degree {degree}")]
    InexactRule { nodes: usize, degree: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
