use std::io;
use std::path::PathBuf;

use thiserror::Error;
use yamada_core::chainpoly::ChainError;
use yamada_core::diagram::DiagramError;
use yamada_core::graph::GraphError;
use yamada_core::hpoly::HError;
use yamada_core::yamada::YamadaError;
use yamada_core::zeros::ZerosError;
use yamada_core::RingError;

/// A syntax or consistency problem in an input file, with its 1-based line.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self { line, message: message.into() }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    H(#[from] HError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Yamada(#[from] YamadaError),
    #[error(transparent)]
    Zeros(#[from] ZerosError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit code: 1 for bad invocations, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
