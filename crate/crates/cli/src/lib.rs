//! Command-line front end for `diffalg-core`: expression parsing, query
//! dispatch, JSON reports and batch mode.

pub mod batch;
pub mod parse;
pub mod query;
pub mod report;

pub use query::{run_query, CliError, Query};
pub use report::VerdictReport;
