use std::io;
use std::path::Path;

/// Errors the CLI maps onto its exit-code bands: scenario problems exit 10,
/// everything else nonzero per [`CliError::exit_code`]. Argument-parsing
/// errors are handled by `main` directly (exit 11).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Scenario parse or validation failure tied to a line.
    #[error("{path}:{line}: {msg}")]
    ScenarioAt {
        path: String,
        line: usize,
        msg: String,
    },
    /// Scenario-level failure without a single line (missing file,
    /// cross-field validation).
    #[error("{path}: {msg}")]
    Scenario { path: String, msg: String },
    /// Domain error propagated from the library.
    #[error(transparent)]
    Domain(#[from] summab_core::Error),
    /// Output i/o failure (report or dump files).
    #[error("{path}: {source}")]
    Output { path: String, source: io::Error },
}

impl CliError {
    pub fn at(path: &Path, line: usize, msg: impl Into<String>) -> Self {
        CliError::ScenarioAt {
            path: path.display().to_string(),
            line,
            msg: msg.into(),
        }
    }

    pub fn scenario(path: &Path, msg: impl Into<String>) -> Self {
        CliError::Scenario {
            path: path.display().to_string(),
            msg: msg.into(),
        }
    }

    pub fn output(path: &Path, source: io::Error) -> Self {
        CliError::Output {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ScenarioAt { .. } | CliError::Scenario { .. } => 10,
            CliError::Domain(_) | CliError::Output { .. } => 12,
        }
    }
}
