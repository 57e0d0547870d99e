//! Command-line front end: scenario and config files, the HTTP completion
//! endpoint, run artifacts and the `dcsf` subcommands.

pub mod artifacts;
pub mod cli;
pub mod commands;
pub mod endpoint;
pub mod error;
pub mod files;

pub use commands::{cmd_compare, cmd_export_deployment, cmd_generate, cmd_solve, SolveOptions};
pub use dcsf_core as core;
pub use error::{CliError, Result};
