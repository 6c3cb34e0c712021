//! File formats, experiment reports and command bodies behind the `replen`
//! binary.

pub mod commands;
pub mod error;
pub mod exec;
pub mod format;
pub mod report;

pub use error::CliError;
