use std::io;
use std::path::{Path, PathBuf};

use monoqueue::sssp::{GenError, ParseError, SsspError};
use monoqueue::ConfigError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments, configuration or input files.
    #[error("{0}")]
    Invalid(String),
    /// A result failed verification or backends disagreed.
    #[error("{0}")]
    Verification(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    /// Prefixes the message with `what`.
    pub fn context(self, what: String) -> Self {
        match self {
            CliError::Invalid(m) => CliError::Invalid(format!("{what}: {m}")),
            CliError::Verification(m) => CliError::Verification(format!("{what}: {m}")),
            io => io,
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<SsspError> for CliError {
    fn from(e: SsspError) -> Self {
        match e {
            SsspError::Queue(q) => CliError::Verification(format!("internal queue error: {q}")),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

/// Reads and parses a DIMACS file.
pub fn read_graph(path: &Path) -> Result<monoqueue::sssp::Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    monoqueue::sssp::parse_dimacs(&text)
        .map_err(|e: ParseError| CliError::Invalid(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}
