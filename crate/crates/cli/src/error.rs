use thiserror::Error;
use tilelab_core::{GridError, PolyError, SearchError};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or unreadable input; exit 2.
    #[error("{0}")]
    Usage(String),
    /// A cap or deadline was hit; exit 3.
    #[error("resource limit reached: {0}")]
    Resource(String),
}

impl From<GridError> for CliError {
    fn from(e: GridError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("invalid JSON: {e}"))
    }
}

/// Search errors that are not negative results.
pub fn search_failure(e: SearchError) -> CliError {
    match e {
        SearchError::ResourceLimit(m) => CliError::Resource(m),
        other => CliError::Usage(other.to_string()),
    }
}
