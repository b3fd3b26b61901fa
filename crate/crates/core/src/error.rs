use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("matrix is not square: {rows} rows, row of length {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension {got} is too small, need at least {min}")]
    DimTooSmall { got: usize, min: usize },

    #[error("dimension {got} exceeds the limit of {max}")]
    DimGuard { got: usize, max: usize },

    #[error("kernel of half-width {half_width} does not fit a grid of {n} points")]
    KernelTooWide { half_width: usize, n: usize },

    #[error("kernel taps are not normalized: sum of squares is {sum_sq}")]
    KernelNotNormalized { sum_sq: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("unsupported environment: {0}")]
    UnsupportedEnvironment(String),

    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("expectation value has imaginary residue {residue}")]
    ComplexExpectation { residue: f64 },

    #[error("excess kurtosis undefined: second moment is zero")]
    KurtosisUndefined,

    #[error("numerical failure at step {step}: {reason}")]
    NumericalFailure { step: usize, reason: String },

    #[error("walk leaves the lattice: {0}")]
    LatticeOverflow(String),

    #[error("{quantity} did not strictly increase at step {step}")]
    MonotonicityViolation { quantity: &'static str, step: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
