use thiserror::Error;

/// Errors reported by the computational kernels.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes identically after substitution")]
    VanishingDenominator,
    #[error("half-integer power of a non-square substitution value: {0}")]
    NoSquareRoot(String),
    #[error("alphabet count mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("series constant term must be {expected}, found {found}")]
    ConstantTerm {
        expected: &'static str,
        found: String,
    },
    #[error("rank {rank} exceeds truncation rank {truncation}")]
    RankOverflow { rank: usize, truncation: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid multiplicity data: {0}")]
    InvalidMultiplicities(String),
    #[error("missing eigenvalue assignment")]
    MissingEigenvalues,
    #[error("value is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("factor index {index} out of range 1..={genus}")]
    FactorOutOfRange { index: usize, genus: usize },
    #[error("trace word reduction exceeded the length bound {0}")]
    ReductionLimit(usize),
    #[error("shuffle product left M_{{{n},{k}}}: {detail}")]
    MembershipFailure { n: usize, k: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
