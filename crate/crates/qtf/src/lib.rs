//! File formats, run configuration and commands behind the `qtf` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;

pub use commands::Outcome;
pub use config::RunConfig;
pub use error::CliError;
