//! Command-line front end for the `punditry` library.
//!
//! The binary is a thin shell around three modules:
//!
//! * [`file`] — the versioned JSON scenario format: strict parsing with
//!   field-path error messages, symmetric-closure handling for the
//!   similarity table, and saving (load ∘ save is the identity on every
//!   numeric entry).
//! * [`report`] — the one output document every subcommand produces, with
//!   `table` (human), `json` and `csv` renderers.  The machine formats
//!   carry exactly the numbers the table shows.
//! * [`app`] — argument parsing (clap) and the mapping from parsed
//!   arguments to library calls, documents and exit codes.
//!
//! Exit codes: `0` success (including `Verified` and `Inapplicable`
//! verdicts), `1` a check came back `Violated`, a search found no witness,
//! or validation found invariant violations, `2` usage or input errors.

pub mod app;
pub mod file;
pub mod report;
