//! Command-line front end: layered run configuration, CSV artifacts and the
//! `qlem` subcommands.

pub mod commands;
pub mod config;
pub mod csv;

pub use commands::{run, CliError};
