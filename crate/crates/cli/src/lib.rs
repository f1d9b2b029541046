//! Command-line front end for `powergraph-core`: configuration, graph and
//! matrix file formats, and reproducible reports.

pub mod analysis;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod report;

pub use commands::{run, Document, Outcome};
pub use config::{resolve, Cli, RunConfig};
pub use error::{CliError, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
