//! Scenario-driven front end for `dgtwist-core`: scenario files, a task
//! runner and versioned reports.

pub mod build;
pub mod prelude;
pub mod report;
pub mod runner;
pub mod scenario;

pub use report::{emit_report, exit, Format, RunReport, REPORT_SCHEMA};
pub use runner::{run, RunOptions};
pub use scenario::{parse_scenario, ParseError, Scenario, SCENARIO_FORMAT};
