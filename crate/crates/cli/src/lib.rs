//! Library half of the `entmoments` command: state files, scans, thresholds
//! and the analysis report, kept separate from argument parsing so they can
//! be tested directly.

pub mod columns;
pub mod error;
pub mod report;
pub mod scan;
pub mod statefile;
pub mod threshold;

pub use error::{exit, CliError, Result};
