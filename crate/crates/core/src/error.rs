use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty string")]
    Empty,
    #[error("entry {value} at position {index} is below the minimum {min}")]
    EntryTooSmall { index: usize, value: i64, min: i64 },
    #[error("malformed string literal {0:?}")]
    Parse(String),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cyclic dual is undefined for an all-2 string")]
    AllTwos,
    #[error("power must be at least 1, got {0}")]
    BadPower(i64),
    #[error("transform produced coefficient {value} at position {index}; coefficients of absolute value 1 need further blowdowns")]
    UnitCoefficient { index: usize, value: i64 },
    #[error("{p}/{q} is not a reduced fraction with p > q >= 0")]
    BadFraction { p: i128, q: i128 },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("string is not hyperbolic (p - r = {trace} <= 2)")]
    NotHyperbolic { trace: i128 },
    #[error("string has no S1a decomposition")]
    NotInS1a,
    #[error("negative input {0}")]
    Negative(i128),
    #[error("d-invariant formula needs odd t, got {0}")]
    EvenTwist(i64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no contraction: {0}")]
    NoContraction(String),
    #[error("matrix has determinant {0}, expected 1")]
    Determinant(i128),
    #[error("no normal form found within conjugator length {0}")]
    NormalFormNotFound(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
