use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    #[error("log requires constant term 1, found {0}")]
    LogConstantTerm(String),
    #[error("exp requires constant term 0, found {0}")]
    ExpConstantTerm(String),
    #[error("euler product requires a_0 = 1, found {0}")]
    EulerLeadingTerm(String),
    #[error("geometric inverse requires leading term 1")]
    GeometricLeadingTerm,
    #[error("expansion bases differ: {0} vs {1}")]
    BaseMismatch(String, String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("no polynomial ratio expansion: {0}")]
    NoRatioExpansion(String),
    #[error("growth exponent a = {0}: polynomial moment expansions need a = 1")]
    GrowthExponent(u32),
    #[error("unknown semigroup `{0}`")]
    UnknownSemigroup(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration limit exceeded: n = {n} > {max}")]
    TooLarge { n: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
