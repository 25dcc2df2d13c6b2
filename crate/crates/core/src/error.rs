use std::fmt;

/// Crate-wide error type. Variants mirror the failure classes of the
/// numerical routines rather than their call sites.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two fields or paths live on incompatible grids.
    GridMismatch(String),
    /// A parameter is outside its admissible range.
    InvalidParameter(String),
    /// The requested quantity is undefined for the given data
    /// (e.g. negative-order homogeneous Sobolev norm with a DC mode).
    DomainError(String),
    /// The discretization cannot resolve the requested quantity.
    ResolutionError(String),
    /// An iterative solver ran out of iterations or failed to bracket.
    ConvergenceFailure(String),
    /// Non-finite values appeared mid-computation.
    NumericalBlowup(String),
    Io(String),
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GridMismatch(s) => write!(f, "grid mismatch: {s}"),
            Error::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
            Error::DomainError(s) => write!(f, "domain error: {s}"),
            Error::ResolutionError(s) => write!(f, "resolution error: {s}"),
            Error::ConvergenceFailure(s) => write!(f, "convergence failure: {s}"),
            Error::NumericalBlowup(s) => write!(f, "numerical blow-up: {s}"),
            Error::Io(s) => write!(f, "io error: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
