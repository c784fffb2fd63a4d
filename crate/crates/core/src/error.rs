//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Two values built over different groups were combined.
    #[error("group spec mismatch: {0}")]
    GroupMismatch(String),

    /// An operation was called with arguments violating its contract.
    #[error("usage: {0}")]
    Usage(String),

    /// The inputs are structurally fine but lie outside the operation's domain.
    #[error("domain: {0}")]
    Domain(String),

    /// A window does not determine a coordinate the computation needs.
    #[error("window does not determine the coordinate at {site}")]
    MissingSite { site: String },

    /// Enumerating a candidate space would exceed the configured budget.
    #[error("enumeration budget exceeded: {needed} candidates > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    /// A shell of the word metric came up empty (the group was exhausted).
    #[error("empty shell at radius {radius}")]
    EmptyShell { radius: u32 },

    /// No filling of the window is compatible with the boundary condition.
    #[error("no admissible filling for the given boundary")]
    NoAdmissibleFilling,

    /// A description or a constructed object failed validation.
    #[error("validation: {0}")]
    Validation(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
