use core::fmt;

/// Errors surfaced by operations whose preconditions can fail at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// A fractional-linear denominator vanished (only reachable for inputs
    /// outside the domain the map is defined on).
    Pole,
    /// A coordinate left the region where the formula is defined, e.g.
    /// `|x3| >= 1` in the beta chart or a negative discriminant signalling a
    /// non-member input.
    Degenerate,
    /// An iteration hit its cap without reaching its tolerance.
    NonConvergence,
    /// A holomorphic disc family violated its band conditions on the
    /// boundary sample.
    InvalidFamily,
    /// Canonical parameters failed to reproduce the composite action
    /// pointwise; indicates a parametrization bug, not a math failure.
    Canonicalization,
    /// The input was required to be a domain member and is not.
    NotInDomain,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole => write!(f, "fractional-linear denominator vanished"),
            Error::Degenerate => write!(f, "input outside the chart of the formula"),
            Error::NonConvergence => write!(f, "iteration did not converge within its cap"),
            Error::InvalidFamily => write!(f, "disc family violates its band conditions"),
            Error::Canonicalization => write!(f, "canonical parameters do not reproduce the action"),
            Error::NotInDomain => write!(f, "point is not a member of the required domain"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
