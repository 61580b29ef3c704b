//! File format, drawings and subcommands behind the `cayley` binary.

pub mod commands;
pub mod document;
pub mod svg;

pub use commands::{run, Cli, Outcome};
