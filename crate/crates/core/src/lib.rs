//! Exact discrete inference for a family of voter/pundit models.
//!
//! The crate is organised in three layers:
//!
//! * **Inference kernel** — [`domain`], [`factor`], [`maid`], [`bayes`]:
//!   labelled finite domains, dense factor algebra, influence diagrams
//!   (chance/decision/utility nodes) solved by expected-utility
//!   maximisation, and plain Bayesian networks with exact variable
//!   elimination plus a brute-force joint-enumeration oracle.
//! * **Models** — [`scenario`], [`models`]: the trusting-voter,
//!   biased-pundit and suspicious-voter models, built both as influence
//!   diagrams and as closed-form operations on a shared [`scenario::Scenario`].
//! * **Analysis** — [`classify`], [`verify`], [`search`]: classification of
//!   messages as strictly negative/positive information, mechanical checks
//!   of the monotone-update, constant-pundit, mixture-update, no-deception
//!   and anomalous-update claims, and a seeded search for anomalous-update
//!   witness scenarios.
//!
//! All numeric work is exact up to `f64` rounding: probabilities are dense
//! tables, never samples. Every tolerance used by the crate is a named
//! constant below.

pub mod bayes;
pub mod classify;
pub mod domain;
pub mod error;
pub mod factor;
pub mod maid;
pub mod models;
pub mod scenario;
pub mod search;
pub mod verify;

pub use error::{Error, Result};

/// Absolute tolerance for probability normalisation and comparisons.
pub const PROB_TOL: f64 = 1e-9;

/// Probability mass at or below this threshold is treated as impossible
/// evidence (conditioning on it is a [`Error::ZeroEvidence`] error, and
/// model operations fall back to documented conventions instead).
pub const ZERO_MASS: f64 = 1e-12;

/// Default cap on the number of joint-table entries the brute-force
/// enumeration oracle will materialise.
pub const DEFAULT_JOINT_CAP: usize = 10_000_000;
