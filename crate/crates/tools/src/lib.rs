//! File formats, reports and the `segal` command-line driver on top of
//! `segal-core`.

pub mod cli;
pub mod error;
pub mod format;
pub mod report;

pub use error::{CliError, CliResult};
