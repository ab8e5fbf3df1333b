use thiserror::Error;

use crate::gamma::Violation;
use crate::invariants::Regime;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid curve parameters (d={d}, k={k}): both must be positive integers")]
    InvalidParams { d: i64, k: i64 },

    #[error("operation requires the {expected} regime but (d={d}, k={k}) is {found}")]
    WrongRegime {
        d: i64,
        k: i64,
        expected: Regime,
        found: Regime,
    },

    /// The no-small-curve regime needs d > k^2, otherwise d = k^2 + nu^2 + eps has no solution
    /// with the hyperplane section off every curve of type k-1.
    #[error("d={d} must exceed k^2={k_squared} for the no-small-curve regime")]
    DegreeNotAboveKSquared { d: i64, k_squared: i64 },

    #[error("invalid constraint profile: {0}")]
    InvalidProfile(String),

    #[error("sequence is not admissible: {}", describe(.0))]
    Inadmissible(Vec<Violation>),

    #[error("enumeration exceeded the node budget of {budget} partial states; use a smaller instance")]
    BudgetExceeded { budget: u64 },

    #[error("admissible sequence {sequence} has support {support} beyond the cap {cap}")]
    SupportCapExceeded {
        sequence: String,
        support: usize,
        cap: usize,
    },

    #[error("cannot parse gamma sequence: {0}")]
    Parse(String),
}

fn describe(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
