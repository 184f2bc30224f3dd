//! Crate-wide error type.
//!
//! Three failure classes matter to callers and map onto distinct process
//! exit codes in the CLI: malformed or axiom-violating input, exhausted
//! resource caps, and — the one that must never fire on sound code — a
//! mechanically checked theorem coming out false.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input data violates a structural axiom (bad table, non-ideal subset,
    /// non-homomorphism map, malformed JSON, unmet precondition, …).
    #[error("invalid {kind}: {message}")]
    Invalid { kind: &'static str, message: String },

    /// Two values were combined that live over different ambient objects.
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    /// An enumeration would exceed the configured element cap.
    #[error("cap exceeded: {what} has {size} elements, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    /// A verified statement failed on a concrete instance.  Carries a full
    /// counterexample description.
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub fn invalid(kind: &'static str, message: impl Into<String>) -> Self {
        Error::Invalid {
            kind,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
