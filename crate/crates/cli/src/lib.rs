//! Command-line front end for `s1deg-core`: JSON formats, the preset
//! registry, text rendering and the oracle self-test.

pub mod commands;
pub mod error;
pub mod json;
pub mod registry;
pub mod render;
pub mod selftest;

pub use commands::{execute, Cli, Format, Output};
pub use error::{exit, CliError, CliResult, FieldError};
