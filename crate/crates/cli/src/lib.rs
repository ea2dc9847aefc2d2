//! File formats, commands and JSON reports for the `sgcert` command-line tool.

pub mod commands;
pub mod expr;
pub mod format;
pub mod render;
pub mod report;

pub use commands::{CliError, Settings, Target};
pub use report::{Outcome, Report};
