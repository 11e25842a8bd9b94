use thiserror::Error;

/// Errors raised by the exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: nonzero remainder")]
    InexactDivision,
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantInner,
    #[error("series is not revertible (needs f(0) = 0 and f'(0) a unit)")]
    NotRevertible,
    #[error("square root requires constant term 1")]
    BadConstantTerm,
    #[error("coefficient index {index} exceeds truncation order {order}")]
    TruncationExceeded { index: usize, order: usize },
    #[error("cannot shift down by {shift}: coefficient of x^{index} is nonzero")]
    NonzeroLowOrder { shift: usize, index: usize },
    #[error("invalid Riordan pair: {0}")]
    InvalidPair(&'static str),
    #[error("matrix is singular: diagonal entry {index} is not a unit")]
    SingularMatrix { index: usize },
    #[error("matrix is not lower triangular at ({row}, {col})")]
    NotLowerTriangular { row: usize, col: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(&'static str),
    #[error("zero beta at interior level {level}")]
    ZeroBeta { level: usize },
    #[error("Hankel degeneracy: beta vanishes at level {level}")]
    HankelDegenerate { level: usize },
    #[error("not enough terms: need {needed}, have {got}")]
    NotEnoughTerms { needed: usize, got: usize },
    #[error("operation unsupported for this coefficient type")]
    UnsupportedCoefficient,
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(&'static str),
    #[error("parameter domain violated: {0}")]
    InvalidParameter(&'static str),
    #[error("inner series depends on the parameter")]
    ParameterDependent,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
