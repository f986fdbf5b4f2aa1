use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Verdicts (smirnov / not, uniformly integrable / not) are never errors;
/// these variants signal that a computation could not be carried out.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HardyError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-integrable sample at node {index}: {value}")]
    NonIntegrable { index: usize, value: f64 },

    #[error("denominator underflow at z = {re} + {im}i")]
    Underflow { re: f64, im: f64 },

    #[error("point {re} + {im}i left the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("boundary estimation failed: {divergent} of {total} nodes divergent")]
    BoundaryEstimationFailed { divergent: usize, total: usize },

    #[error("gauge unavailable: {0}")]
    GaugeUnavailable(String),

    #[error("bound unavailable: no gauge knot lies below t = {0}")]
    BoundUnavailable(f64),

    #[error("factorization unavailable: {0}")]
    FactorizationUnavailable(String),
}

pub type Result<T> = std::result::Result<T, HardyError>;

pub(crate) fn invalid(msg: impl Into<String>) -> HardyError {
    HardyError::InvalidArgument(msg.into())
}
