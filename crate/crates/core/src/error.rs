use thiserror::Error;

use crate::polycore::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("resultant undefined: both inputs are constant in {0}")]
    ResultantUndefined(Var),
    #[error("zero polynomial not allowed: {0}")]
    ZeroInput(&'static str),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("singular transformation matrix")]
    Singular,
    #[error("transformation is not in the star subgroup (last row must be (0,...,0,1))")]
    NotStar,
    #[error("components share the common factor {0}")]
    CommonFactor(String),
    #[error("no invertible sample after {0} attempts; check --coeff-bound")]
    SamplerExhausted(usize),
    #[error("could not normalize hypotheses after {0} shifts")]
    NormalizationFailed(usize),
    #[error("genericity certificate failed in all {trials} trials: {summary}")]
    CertificationFailed { trials: usize, summary: String },
    #[error("{0} is not a base point")]
    NotBasePoint(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("map is not dominant")]
    NotDominant,
    #[error("non-positive map degree {0}")]
    NonPositiveDegMap(i64),
    #[error("missing metadata: {0}")]
    MissingMetadata(&'static str),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("supplied map is not an inverse of L∘S")]
    NotInverse,
    #[error("curves share a component through the point")]
    CommonComponent,
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// True for failures of a randomized certification step, as opposed to
    /// malformed input.
    pub fn is_certification(&self) -> bool {
        matches!(
            self,
            Error::CertificationFailed { .. }
                | Error::NormalizationFailed(_)
                | Error::SamplerExhausted(_)
                | Error::OracleDisagreement(_)
        )
    }
}
