use std::path::PathBuf;

use thiserror::Error;

use crate::oracle::MAX_ORACLE_CUTOFF;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] twophoton_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("oracle cutoff ({n1},{n2}) exceeds the limit of {MAX_ORACLE_CUTOFF} per mode")]
    OracleCutoff { n1: usize, n2: usize },

    #[error("oracle cutoff ({n1},{n2}) leaves no room for the {headroom}-level headroom")]
    OracleTooSmall { n1: usize, n2: usize, headroom: usize },

    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
