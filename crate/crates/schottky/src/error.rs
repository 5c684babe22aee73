use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the command-line layer.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("ParseError at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("SchemaError at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("IoError on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{kind}: {source}", kind = source.kind())]
    Core {
        #[from]
        source: schottky_core::Error,
    },
    #[error("ValidationFailure: {0}")]
    Validation(String),
    #[error("UsageError: {0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status: 2 for failed checks, 3 for exhausted budgets and
    /// 4 for I/O, parse and schema problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core {
                source: schottky_core::Error::BudgetExceeded { .. },
            } => 3,
            CliError::Parse { .. } | CliError::Schema { .. } | CliError::Io { .. } => 4,
            CliError::Core { .. } | CliError::Validation(_) | CliError::Usage(_) => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
