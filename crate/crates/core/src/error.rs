//! Error taxonomy shared by every layer of the crate.

use thiserror::Error;

/// Errors produced by inference, model construction and verification.
///
/// The variants are deliberately coarse: callers (in particular the CLI)
/// dispatch on the *kind* of failure, while the payload string carries the
/// precise context (which variable, which label, which invariant).
#[derive(Debug, Error)]
pub enum Error {
    /// Wiring defects: unknown variables, duplicate identifiers, scope or
    /// domain mismatches, cycles.
    #[error("structural error: {0}")]
    Structural(String),

    /// Bad caller input: unknown labels, malformed queries, values outside
    /// a declared domain.
    #[error("input error: {0}")]
    Input(String),

    /// Conditioning on an event whose probability mass is not above the
    /// zero-mass threshold (`1e-12`).
    #[error("zero-probability evidence: {0}")]
    ZeroEvidence(String),

    /// A model, scenario or table violates one of its declared invariants.
    #[error("invariant violation: {0}")]
    Specification(String),

    /// A computation would exceed a configured resource cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True when the error is the zero-probability-evidence case, which
    /// verification routines convert into an `Inapplicable` verdict rather
    /// than propagating.
    pub fn is_zero_evidence(&self) -> bool {
        matches!(self, Error::ZeroEvidence(_))
    }
}
