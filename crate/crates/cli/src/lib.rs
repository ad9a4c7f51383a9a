//! Command-line front end for `choi-core`: reads coefficient matrices from
//! JSON, runs the analytic criteria and the certificate searches, and writes
//! JSON or text reports.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use commands::{
    analyze_matrix, cmd_analyze, cmd_probe, cmd_reproduce, cmd_search, AnalysisRequest, Instance,
    OutputFormat, Settings,
};
pub use error::{CliError, Result};
pub use report::ReportDocument;
