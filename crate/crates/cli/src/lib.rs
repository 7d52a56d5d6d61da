//! Verification suite: ingests the 57-line data files, runs the registered
//! claims and renders reports.

pub mod ingest;
pub mod registry;
pub mod report;
pub mod suite;

pub use ingest::{ingest_seidel, IngestError, SeidelDataFile};
pub use report::{ClaimReport, Status, SuiteReport};
pub use suite::{claim_ids, run_suite, Config, SuiteError};
