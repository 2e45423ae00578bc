//! Command-line front end for `qsep-core`: JSON state files in, reports out.
//!
//! Exit codes: `0` success, `1` numeric failure, `2` parse or schema error,
//! `3` invariant violation.

pub mod cli;
pub mod commands;
mod error;
pub mod json;
pub mod report;
pub mod spec;

pub use error::CliError;
