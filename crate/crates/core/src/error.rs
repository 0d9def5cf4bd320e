use thiserror::Error;

/// Errors produced by the operator and functional kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator is not positive: smallest eigenvalue {min_eigenvalue:e} is below -{threshold:e}")]
    NotPositive { min_eigenvalue: f64, threshold: f64 },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: String,
        found: String,
    },

    #[error("partial operator admits no positive extension: {0}")]
    NotExtensible(String),

    #[error("incomplete block system is not completable: ran B* is not contained in ran A")]
    NotCompletable,

    #[error("block operator [[A, B*], [B, C]] is not positive")]
    BlockNotPositive,

    #[error("parallel difference is undefined: {0}")]
    NotDefined(PardiffFailure),

    #[error("functional is not representable: {0}")]
    NotRepresentable(String),

    #[error("functional is not dominated: {0}")]
    NotDominated(String),

    #[error("regular-part routes disagree: deviation {deviation:e} exceeds {threshold:e}")]
    RouteDisagreement { deviation: f64, threshold: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Which of the two existence conditions of `B ÷ A` failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PardiffFailure {
    /// `A - B` is not positive semidefinite.
    NotDominated,
    /// `A - B` is positive but `ran A` is not contained in `ran (A - B)`.
    RangeNotIncluded,
}

impl std::fmt::Display for PardiffFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PardiffFailure::NotDominated => write!(f, "A - B is not positive semidefinite"),
            PardiffFailure::RangeNotIncluded => {
                write!(f, "ran A is not contained in ran (A - B); the supremum is infinite")
            }
        }
    }
}

impl Error {
    /// True for mathematical refusals (as opposed to malformed input).
    pub fn is_domain_error(&self) -> bool {
        !matches!(
            self,
            Error::DimensionMismatch { .. } | Error::InvalidInput(_)
        )
    }

    pub(crate) fn dims(context: &'static str, expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            context,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
