//! Command-line front end for the `predomain` library: the structure file
//! format, the command implementations and their reports.

pub mod commands;
pub mod format;
pub mod report;

use std::path::{Path, PathBuf};

use format::{Kind, ParseError, StructureFile};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("expected a {expected} file, got a {found} file")]
    KindMismatch { expected: &'static str, found: Kind },
    #[error(transparent)]
    Core(#[from] predomain::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use predomain::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } | CliError::KindMismatch { .. } => {
                EXIT_USAGE
            }
            CliError::Core(E::EnumerationBound { .. } | E::CarrierTooLarge { .. }) => EXIT_RESOURCE,
            CliError::Core(E::InvalidRational(_) | E::UnknownLabel(_) | E::LengthMismatch { .. }) => EXIT_USAGE,
            CliError::Core(_) => EXIT_CHECK_FAILED,
        }
    }
}

pub fn load(path: &Path) -> Result<StructureFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    format::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}
