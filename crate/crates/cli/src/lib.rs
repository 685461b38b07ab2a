//! Command-line layer over `gkz-core`: problem files, reports and drivers, plus
//! the random search harness, property self-tests and region plots.

pub mod config;
pub mod error;
pub mod pipeline;
pub mod plot;
pub mod random;
pub mod report;
pub mod search;
pub mod selftest;

pub use config::{Problem, ProblemConfig};
pub use error::{CliError, CliResult};
pub use report::Report;
