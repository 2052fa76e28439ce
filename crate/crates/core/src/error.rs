use std::io;

use thiserror::Error;

use crate::chromatic::ChromaticError;
use crate::construct::SizeError;
use crate::graph6::{Graph6Error, StreamError};
use crate::tutte::TutteError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error: {0}")]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Tutte(#[from] TutteError),
    #[error(transparent)]
    Chromatic(#[from] ChromaticError),
    #[error(transparent)]
    Size(#[from] SizeError),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error(
        "exhaustive generation supports n <= 7 (got {0}); pipe a graph6 stream from an external generator instead"
    )]
    GeneratorOrder(usize),
    #[error("invalid predicate: {0}")]
    Predicate(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Coarse classification used for process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Resource,
    Io,
    Usage,
    Invariant,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Graph6(_) => ErrorKind::Parse,
            Error::Stream(StreamError::Parse { .. }) => ErrorKind::Parse,
            Error::Stream(StreamError::Io(_)) | Error::Io(_) => ErrorKind::Io,
            Error::Tutte(_) | Error::Chromatic(_) | Error::Size(_) => ErrorKind::Resource,
            Error::GeneratorOrder(_) | Error::Predicate(_) | Error::Checkpoint(_) => ErrorKind::Usage,
            Error::Invariant(_) => ErrorKind::Invariant,
        }
    }
}
