use regress_core::RegressError;
use thiserror::Error;

use crate::dataset::{CsvError, DatasetError};

/// Every failure maps to exactly one exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Exit 1: bad flags or flag combinations.
    #[error("usage: {0}")]
    Usage(String),
    /// Exit 2: unreadable files, malformed CSV or JSON, missing columns.
    #[error("data: {0}")]
    Data(String),
    /// Exit 3: the numerics failed on well-formed input.
    #[error("numerical: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<RegressError> for CliError {
    fn from(e: RegressError) -> Self {
        let msg = e.to_string();
        match e {
            RegressError::Shape(_)
            | RegressError::NonFinite { .. }
            | RegressError::UnderDetermined { .. } => CliError::Data(msg),
            RegressError::RankDeficient { .. }
            | RegressError::DegenerateTarget
            | RegressError::EvalDomain(_) => CliError::Numerical(msg),
            RegressError::DegreeTooLarge { .. }
            | RegressError::InvalidFrac(_)
            | RegressError::InvalidConfig(_) => CliError::Usage(msg),
        }
    }
}

impl From<CsvError> for CliError {
    fn from(e: CsvError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        CliError::Data(e.to_string())
    }
}
