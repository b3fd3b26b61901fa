//! Command-line front end for `oqs-market`.
//!
//! Subcommands read a JSON [`config::RunConfig`] and write CSV. Exit codes:
//! 0 on success, 2 for a configuration error, 3 for a numerical failure.

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;

pub use config::RunConfig;
pub use error::{CliError, CliResult};
