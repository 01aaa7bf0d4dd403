use thiserror::Error;

/// Errors raised by numeric operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("precision mismatch: {left} vs {right} working digits")]
    PrecisionMismatch { left: u32, right: u32 },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("invalid bracket: {0}")]
    InvalidBracket(String),

    #[error("root ambiguity: {0}")]
    RootAmbiguity(String),

    #[error("context too small: need about {needed} working digits, have {available}")]
    ContextTooSmall { needed: u64, available: u32 },

    #[error("reference precision shortfall: need {needed} digits, reference carries {available}")]
    ReferenceShortfall { needed: u64, available: u32 },

    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// True for errors caused by how the computation was configured rather
    /// than by the numerics themselves.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_) | Error::ContextTooSmall { .. } | Error::PrecisionMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
