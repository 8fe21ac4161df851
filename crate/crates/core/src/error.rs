use alloc::string::String;

use thiserror::Error;

/// Which resource cap of the Gröbner engine was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetKind {
    BasisSize,
    Degree,
    Pairs,
    CoefficientSize,
}

impl core::fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            BudgetKind::BasisSize => "basis size",
            BudgetKind::Degree => "total degree",
            BudgetKind::Pairs => "critical pairs",
            BudgetKind::CoefficientSize => "coefficient bits",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for a ring with {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("exponent exceeds 2^31 - 1")]
    ExponentOverflow,
    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooLow { target: u32, degree: u32 },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("Gröbner budget exceeded: {kind} limit {limit}")]
    BudgetExceeded { kind: BudgetKind, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
