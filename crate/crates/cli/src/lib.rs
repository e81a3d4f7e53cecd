//! Library side of the `monoqueue` command: benchmark configuration,
//! matrix runs with CSV output, and SVG plots.

pub mod bench;
pub mod config;
pub mod error;
pub mod plot;

pub use error::CliError;
