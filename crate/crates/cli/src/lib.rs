//! File formats and command implementations behind the `quinv` binary.

pub mod commands;
pub mod format;

pub use commands::{run, Cli, Outcome};
