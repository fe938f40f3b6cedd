use core::fmt;

/// Failures reported by the solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// A size or budget limit was exceeded.
    Size {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    /// An iterative method stopped short of its tolerance.
    Numeric { what: &'static str, residual: f64 },
    /// A root was requested on an interval without a sign change.
    Bracket {
        what: &'static str,
        lo: f64,
        hi: f64,
    },
    /// Boltzmann weights left the floating-point range.
    Overflow { what: &'static str },
    /// Two routes that must agree analytically did not.
    Consistency { what: &'static str, value: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what}: value {value} out of domain"),
            Error::Size { what, got, limit } => {
                write!(f, "{what}: size {got} exceeds limit {limit}")
            }
            Error::Numeric { what, residual } => {
                write!(
                    f,
                    "{what}: did not converge (achieved residual {residual:e})"
                )
            }
            Error::Bracket { what, lo, hi } => {
                write!(f, "{what}: no sign change on [{lo:e}, {hi:e}]")
            }
            Error::Overflow { what } => write!(
                f,
                "{what}: Boltzmann weights overflow; rescale the Hamiltonian or lower beta"
            ),
            Error::Consistency { what, value } => {
                write!(f, "{what}: internal consistency violated ({value:e})")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn ensure_positive(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}
