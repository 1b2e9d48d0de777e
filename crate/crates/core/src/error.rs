use thiserror::Error;

use crate::algebra::Rat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("numeric iteration did not converge: {0}")]
    NumericFailure(String),
    #[error("polynomial is not squarefree in the branch variable")]
    NotSquarefree,
    #[error("polynomial has degree 0 in the branch variable")]
    NoBranch,
    #[error("equation is empty after normalization")]
    EmptyEquation,
    #[error("x0 = {0} is a singular point of the equation")]
    SingularBasePoint(Rat),
    #[error("equation has order {0}, expected a first-order equation")]
    NotFirstOrder(usize),
    #[error("resonance at exponent {0} is obstructed: no Puiseux continuation on this grid")]
    ObstructedResonance(Rat),
    #[error("branch is not extendable: {0}")]
    UnsupportedBranch(String),
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("numerator and denominator share a factor of positive degree in w")]
    NotReduced,
    #[error("binomial exponent m must be at least 1")]
    InvalidM,
    #[error("equation depends explicitly on x")]
    NotAutonomous,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
