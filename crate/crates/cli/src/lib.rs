//! Batch front end for the lab: named experiment suites with deterministic
//! seeded reports, and single-query dispatch to the computational modules.

pub mod config;
pub mod ingest;
pub mod report;
pub mod suites;

pub use config::{Suite, SuiteConfig};
pub use report::{CheckResult, RunReport};
pub use suites::run_suite;
