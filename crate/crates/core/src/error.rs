use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `k < 2`, `p` not an odd prime, or the group order does not fit.
    InvalidParams(String),
    /// Elements from two different groups were combined.
    ParamMismatch,
    AlphaOutOfRange(f64),
    CayleyCapExceeded { order: usize, cap: usize },
    /// The graph is not labelled by elements of the expected group.
    Classification(String),
    Disconnected,
    NotSymmetric { row: usize, col: usize },
    NoConvergence { sweeps: usize },
    DimensionMismatch(String),
    /// Exact detour search was aborted (time budget or state cap).
    DetourInfeasible(String),
    SizeCap { n: usize, cap: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(msg) => write!(f, "invalid group parameters: {msg}"),
            Error::ParamMismatch => f.write_str("elements belong to different groups"),
            Error::AlphaOutOfRange(a) => write!(f, "alpha must lie in [0, 1], got {a}"),
            Error::CayleyCapExceeded { order, cap } => {
                write!(f, "group order {order} exceeds the Cayley table cap {cap}")
            }
            Error::Classification(msg) => write!(f, "cannot classify vertices: {msg}"),
            Error::Disconnected => f.write_str("graph is disconnected"),
            Error::NotSymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({row}, {col})")
            }
            Error::NoConvergence { sweeps } => {
                write!(f, "eigensolver did not converge after {sweeps} sweeps")
            }
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::DetourInfeasible(msg) => write!(f, "detour oracle infeasible: {msg}"),
            Error::SizeCap { n, cap } => write!(f, "graph order {n} exceeds the cap {cap}"),
        }
    }
}

impl core::error::Error for Error {}
