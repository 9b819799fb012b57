use thiserror::Error;

use crate::lattice::LatticePoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero in Q(i)")]
    DivisionByZero,

    #[error("value exceeds the range of f64")]
    FloatOverflow,

    #[error("cannot parse {kind}: {input:?}")]
    Parse { kind: &'static str, input: String },

    #[error("window is empty after shrinking")]
    EmptyWindow,

    #[error("window too small: {0}")]
    WindowTooSmall(&'static str),

    #[error("origin 0 is not contained in the window")]
    OriginMissing,

    #[error("path vertex {0} lies outside the function's window")]
    PathOutsideWindow(LatticePoint),

    #[error("invalid path: {0}")]
    InvalidPath(&'static str),

    #[error("function is not discrete analytic (first violating square at {0})")]
    NotDiscreteAnalytic(LatticePoint),

    #[error("point {0} is outside the right half-lattice")]
    OutsideHalfPlane(LatticePoint),

    #[error("evaluation at or too close to a pole (|den| = {0:.3e})")]
    EvaluationAtPole(f64),

    #[error("denominator has no certified root-free disk of radius > 1")]
    PoleRadiusNotCertified,

    #[error("tail does not converge: combined decay ratio {0} >= 1")]
    DivergentTail(f64),

    #[error("tail bound does not converge: coefficient decay product {0} >= 1")]
    NonConvergentBound(f64),

    #[error("matrix is not Hermitian within its evaluation error (deviation {0:.3e})")]
    NonHermitian(f64),

    #[error("denominator vanishes at t = 0")]
    DenominatorVanishesAtOrigin,

    #[error("invalid window bounds: x_min <= x_max and y_min <= y_max required")]
    InvalidWindow,

    #[error("{0}")]
    InvalidInput(String),
}
