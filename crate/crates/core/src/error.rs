use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A 1-based basis index outside `1..=size`.
    Index {
        index: usize,
        size: usize,
    },
    /// An argument outside the domain of the operation.
    Domain(String),
    /// A case the library deliberately refuses to handle.
    Unsupported(String),
    /// Parameters off the manifold on which a closed form holds.
    ConstraintViolation {
        residual: f64,
    },
    /// The integrand was not finite at a quadrature node.
    Integration {
        abscissa: f64,
    },
    /// The eigensolver hit its iteration cap.
    Convergence {
        iterations: usize,
    },
    /// Eigenpairs whose relative residual exceeds the solver contract.
    Residual {
        bound: f64,
    },
    UnknownPotential(String),
    Arity {
        name: String,
        expected: &'static str,
        got: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Index { index, size } => {
                write!(f, "basis index {index} outside 1..={size}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::ConstraintViolation { residual } => {
                write!(f, "constraint violated (relative residual {residual:e})")
            }
            Error::Integration { abscissa } => {
                write!(f, "integrand is not finite at x = {abscissa:e}")
            }
            Error::Convergence { iterations } => {
                write!(f, "eigensolver did not converge after {iterations} iterations")
            }
            Error::Residual { bound } => {
                write!(f, "eigenpair residual {bound:e} exceeds the solver tolerance")
            }
            Error::UnknownPotential(name) => write!(f, "unknown potential `{name}`"),
            Error::Arity { name, expected, got } => {
                write!(f, "potential `{name}` takes {expected} parameter(s), got {got}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
