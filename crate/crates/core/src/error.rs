use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    GammaPole(f64),

    #[error("no contour separates the pole families of G^{{{m},{n}}}_{{{p},{q}}}")]
    PoleSeparation { m: usize, n: usize, p: usize, q: usize },

    #[error("unsupported Meijer G shape ({m},{n},{p},{q})")]
    UnsupportedShape { m: usize, n: usize, p: usize, q: usize },

    #[error("{what} did not converge: estimated error {estimate:e} exceeds {tol:e}")]
    NonConvergence { what: &'static str, estimate: f64, tol: f64 },

    #[error("moment of order {order} diverges (requires order > {bound})")]
    DivergentMoment { order: f64, bound: f64 },

    #[error("resolvent branch tracking failed at z = {re} {im:+}i")]
    BranchTracking { re: f64, im: f64 },

    #[error("edge root classification failed: {0}")]
    EdgeClassification(String),

    #[error("empty sample")]
    EmptySample,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures of an iterative numerical method (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::BranchTracking { .. }
                | Error::EdgeClassification(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
