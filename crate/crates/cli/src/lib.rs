//! Library half of the `qsmoments` binary: argument definitions, the
//! subcommands and table rendering.

pub mod args;
pub mod commands;
pub mod error;
pub mod selftest;
pub mod table;

pub use args::{run, Cli, Outcome};
pub use error::{CliError, CliResult};
pub use table::{Cell, Format, OutputTable};
