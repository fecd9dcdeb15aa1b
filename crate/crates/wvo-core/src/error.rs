use thiserror::Error;

/// Errors surfaced by the toolkit.
///
/// Every decision procedure is exact; an `Err` always means the query was
/// malformed or a stated precondition failed, never "numerically unclear".
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a valid ordering cone: {0}")]
    InvalidOrderingCone(String),

    #[error("generator enumeration is unsupported above dimension {max}: requested dimension {dim}")]
    UnsupportedDimension { dim: usize, max: usize },

    #[error("operator does not map the constraint cone into the ordering cone")]
    NotPositiveOperator,

    #[error("operator image meets the negative interior of the ordering cone")]
    NotWeaklyPositiveOperator,

    #[error("point is not feasible for the problem")]
    InfeasiblePoint,

    #[error("infeasible constraint set")]
    InfeasibleConstraintSet,

    #[error("no qualification condition could be verified")]
    QualificationFailed,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("scalarized problem is unbounded below")]
    ScalarUnbounded,

    #[error("internal consistency check failed: {0}")]
    ConsistencyFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("plot data unavailable: {0}")]
    PlotUnavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
