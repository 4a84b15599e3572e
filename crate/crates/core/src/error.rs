use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),
    #[error("input too large: {0}")]
    InputTooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("the base field does not contain a primitive cube root of unity")]
    NoCubeRootOfUnity,
    #[error("curve is not stable under conjugation")]
    NotConjugationStable,
    #[error("unsupported curve shape: {0}")]
    UnsupportedShape(String),
    #[error("illegal base change (k={k}, m={m})")]
    IllegalBaseChange { k: u32, m: u32 },
    #[error("subfamily index {0} out of range 1..=4")]
    IndexOutOfRange(u32),
    #[error("descent failed: {0}")]
    DescentFailed(String),
    #[error("point has irrational coefficients")]
    NotRational,
}
