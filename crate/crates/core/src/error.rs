use thiserror::Error;

/// Errors produced by operator construction, bound evaluation and the CLI layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Hilbert space: {0}")]
    InvalidSpace(String),

    #[error("mode index {mode} out of range for a {modes}-mode space")]
    InvalidMode { mode: usize, modes: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("superposition needs two distinct basis indices, got {0} twice")]
    DegenerateSuperposition(usize),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("operator is not hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("basis is not orthonormal (max deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("basis has {got} vectors, expected {expected}")]
    IncompleteBasis { got: usize, expected: usize },

    #[error("state is not orthogonal to the system state (overlap {0:e})")]
    NotOrthogonal(f64),

    #[error("expectation value has a non-negligible imaginary part ({0:e})")]
    ComplexExpectation(f64),

    #[error("variance vanishes; bound undefined")]
    ZeroVariance,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("total dimension {0} exceeds the brute-force oracle limit of 32")]
    OracleDimension(usize),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
