//! Scene files, verification suites and SVG figures for the `inversive`
//! command-line tool.

pub mod parse;
pub mod scene;
pub mod svg;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{op}: {source}")]
    Domain {
        op: String,
        #[source]
        source: inversive::Error,
    },
    #[error("unknown suite {0:?} (expected pairing, reflect-equiv, pencils, conjugate, stereo, projline, ninepoint or all)")]
    UnknownSuite(String),
    #[error("SVG figures need a field with real coordinates, {0} has none")]
    UnrenderableField(String),
    #[error("SVG figures need a definite plane, got {0}")]
    UnrenderableSpace(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn domain(op: impl Into<String>, source: inversive::Error) -> CliError {
        CliError::Domain { op: op.into(), source }
    }

    /// 1 for failures of the geometry itself, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain { .. } => 1,
            _ => 2,
        }
    }
}
