//! Shared error type for all numeric kernels.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the numeric kernels.
///
/// Every variant is a contract violation or an honest refusal; no kernel
/// returns a value it cannot bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// Gamma pole at zero or a negative integer.
    Pole {
        /// Offending argument.
        z: f64,
    },
    /// Argument outside an operation's validity region.
    Domain {
        /// Which precondition failed.
        what: &'static str,
    },
    /// Result magnitude exceeds the double-precision range.
    Overflow,
    /// A term or prefactor denominator vanished.
    DivideByZero {
        /// Which denominator vanished.
        what: &'static str,
    },
    /// Adaptive refinement exhausted its subdivision budget.
    NonConvergence {
        /// Budget that was exhausted.
        budget: u32,
    },
    /// A truncation index or recursion depth would exceed its cap.
    BudgetExceeded {
        /// The cap that would be exceeded.
        cap: u64,
    },
    /// A numeric minimizer ended on the edge of its search bracket.
    BracketFailure,
    /// Sequence extrapolation rejected input whose deviations do not decay.
    IllConditioned,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { z } => write!(f, "gamma pole at z = {z}"),
            Error::Domain { what } => write!(f, "domain error: {what}"),
            Error::Overflow => write!(f, "result exceeds double range"),
            Error::DivideByZero { what } => write!(f, "division by zero: {what}"),
            Error::NonConvergence { budget } => {
                write!(f, "no convergence within {budget} subdivisions")
            }
            Error::BudgetExceeded { cap } => write!(f, "iteration budget {cap} exceeded"),
            Error::BracketFailure => write!(f, "minimizer ended on a bracket edge"),
            Error::IllConditioned => {
                write!(f, "extrapolation input deviations do not decay")
            }
        }
    }
}

impl core::error::Error for Error {}
