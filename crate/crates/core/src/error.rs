use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an admissible prime (must be prime and > 6)")]
    BadPrime(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("linear change of coordinates is singular")]
    SingularChange,
    #[error("ideal is not zero-dimensional (Krull dimension {0})")]
    NotZeroDimensional(i64),
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("reduction budget of {0} steps exceeded")]
    ResourceBudgetExceeded(u64),
    #[error("discriminant vanishes identically")]
    DegenerateDiscriminant,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("sampling exhausted after {0} attempts")]
    SamplingExhausted(usize),
    #[error("fiber rank {found} contradicts stratum {stratum} (expected {expected})")]
    StratumViolation {
        stratum: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}
