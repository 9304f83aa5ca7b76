//! Session language, runner and report formats for the `weilreg` binary.

pub mod dsl;
pub mod report;
pub mod runner;

pub use report::{Format, Record, Report, Status};
pub use runner::{run_text, RunOptions, Runner};
