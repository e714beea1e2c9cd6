use thiserror::Error;

use crate::enumeration::SearchStats;
use crate::structure::Violation;

/// Errors raised by the algebraic routines.
///
/// Axiom violations are *not* errors: they are reported through
/// [`ValidityReport`](crate::structure::ValidityReport). Errors are reserved
/// for malformed inputs, broken preconditions, refused workloads and
/// internal invariant failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed structure: {0}")]
    Structural(String),

    #[error("precondition violated: {0}")]
    Contract(String),

    #[error("workload refused: {0}")]
    CapExceeded(String),

    #[error("step budget of {budget} extension steps exhausted")]
    BudgetExhausted { budget: u64, stats: SearchStats },

    #[error("invariant violated: {message}")]
    Invariant {
        message: String,
        witness: Option<Violation>,
    },

    #[error("{0}")]
    Numeric(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
