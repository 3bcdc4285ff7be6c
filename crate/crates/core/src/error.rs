use thiserror::Error;

use crate::classical::Trajectory;
use crate::quadrature::QuadResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point or parameter lies outside the region where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Quantum numbers or polynomial indices beyond the bound-state cutoff.
    #[error("admissibility error: {0}")]
    Admissibility(String),

    /// Numerical procedure could not reach the requested accuracy.
    #[error("accuracy error: {message}")]
    Accuracy {
        message: String,
        best: Option<QuadResult>,
    },

    #[error("enumeration of bound states is unbounded for lambda = {0}; supply an energy or level bound")]
    UnboundedEnumeration(f64),

    /// The trajectory left the region 1 + lambda r^2 > 0 at step `index`.
    #[error("trajectory left the domain at step {index}")]
    TrajectoryExit {
        index: usize,
        partial: Box<Trajectory>,
    },

    #[error("fit error: {0}")]
    Fit(String),

    /// Two independent constructions of the same object disagree.
    #[error("route disagreement: {0}")]
    RouteMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn admissibility(msg: impl Into<String>) -> Self {
        Error::Admissibility(msg.into())
    }

    pub(crate) fn accuracy(msg: impl Into<String>) -> Self {
        Error::Accuracy {
            message: msg.into(),
            best: None,
        }
    }
}
