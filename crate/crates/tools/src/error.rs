use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures that end a command, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{0}")]
    Algebra(String),

    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Algebra(_) => 3,
            CliError::Resource(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) | CliError::Io { .. } => "input",
            CliError::Algebra(_) => "algebra",
            CliError::Resource(_) => "resource",
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<segal_core::Error> for CliError {
    fn from(e: segal_core::Error) -> Self {
        use segal_core::Error as E;
        let message = e.to_string();
        match e {
            E::Budget { .. } | E::InsufficientTruncation { .. } | E::Overflow => {
                CliError::Resource(message)
            }
            E::Axiom(_)
            | E::NotStrict(_)
            | E::NotFunctorial { .. }
            | E::NotIsomorphism { .. }
            | E::NotEquivariant { .. }
            | E::Simplicial(_)
            | E::NotACycle => CliError::Algebra(message),
            E::Mismatch { .. }
            | E::InvalidMap(_)
            | E::OverlappingImages { .. }
            | E::OutOfRange { .. }
            | E::MissingTable { .. } => CliError::Input(message),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
