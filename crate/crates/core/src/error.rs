use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model or grid parameter violates its invariant. `requirement` reads
    /// as the tail of "`field` must be ...".
    #[error("{field} must be {requirement}")]
    InvalidParameter {
        field: &'static str,
        requirement: &'static str,
    },

    #[error("tail tolerance must be > 0, got {0}")]
    NonPositiveTolerance(f64),

    #[error("energy-to-temperature ratio must be > 0, got {0}")]
    NonPositiveRatio(f64),

    #[error("no Fock cutoff below {limit} meets the tail tolerance")]
    CutoffOverflow { limit: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, requirement: &'static str) -> Self {
        Error::InvalidParameter { field, requirement }
    }
}
