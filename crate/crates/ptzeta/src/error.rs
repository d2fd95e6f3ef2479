use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },
    #[error("argument {at} lies on the branch cut of {function}")]
    BranchCut { function: &'static str, at: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    #[error("s = {s} is within {distance:e} of a catalogued singularity ({kind}); see the structure report")]
    Singularity { s: String, distance: f64, kind: String },
    #[error("not a closed-form family: {0}")]
    NotClosedForm(String),
    #[error("root bracketing failed on {} subinterval(s): {intervals:?}", intervals.len())]
    Bracketing { intervals: Vec<(f64, f64)> },
    #[error("degenerate limit constant: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, Error>;
