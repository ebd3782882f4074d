//! Driver for the sextic toolkit: configuration, the verification pipeline
//! and its JSON report.

pub mod config;
pub mod error;
pub mod pipeline;
pub mod report;

pub use config::{parse_point, Check, RunConfig};
pub use error::CliError;
pub use pipeline::{load_instance, run_single, run_verify_all};
pub use report::VerificationReport;
