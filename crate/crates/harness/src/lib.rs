//! Mines hypothesis-satisfying configurations from a group catalog and
//! checks each theorem on them exactly.
//!
//! The pipeline is [`catalog`] → [`mining`] (instance specs) →
//! [`instance::Loader`] (hypotheses re-verified) → [`checks`] →
//! [`report`]. [`run_suite`] wires these together.

pub mod catalog;
pub mod checks;
pub mod dsl;
pub mod instance;
pub mod mining;
pub mod report;
mod suite;
pub mod util;

pub use catalog::{Catalog, CatalogEntry};
pub use instance::{Instance, InstanceSpec, Kind, Loader};
pub use mining::Limits;
pub use report::{ErrorClass, InstanceReport, Verdict, VerificationReport};
pub use suite::{run_instances, run_suite, run_suite_file, SuiteFile, SuiteOptions};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error("parse error: {0}")]
    Dsl(#[from] dsl::DslError),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("engine inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Engine(charlab::Error),
    #[error("bad input: {0}")]
    Format(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<charlab::Error> for HarnessError {
    fn from(e: charlab::Error) -> Self {
        match e {
            charlab::Error::Hypothesis(m) => HarnessError::Hypothesis(m),
            charlab::Error::Inconsistent(m) => HarnessError::Inconsistent(m),
            other => HarnessError::Engine(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
