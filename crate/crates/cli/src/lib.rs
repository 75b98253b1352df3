//! File formats and the command-line driver for `relrep-core`.

pub mod commands;
pub mod error;
pub mod files;

pub use commands::{run, Cli, Command};
pub use error::CliError;
