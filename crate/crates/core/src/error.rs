use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WbError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("verification failed [{lemma}]: {detail}")]
    Verification { lemma: String, detail: String },
    #[error("not an isometry candidate: {0}")]
    NotIsometryCandidate(String),
    #[error("not Brauer-compatible: {0}")]
    NotBrauerCompatible(String),
    #[error("search space {count} exceeds bound {bound}")]
    BoundExceeded { count: String, bound: String },
    #[error("non-integral input: {0}")]
    NonIntegral(String),
    #[error("division by a non-unit")]
    NonUnit,
    #[error("{0}")]
    Unsupported(String),
}

impl WbError {
    pub fn verification(lemma: &str, detail: impl Into<String>) -> Self {
        WbError::Verification {
            lemma: lemma.to_string(),
            detail: detail.into(),
        }
    }

    pub fn spec(msg: impl Into<String>) -> Self {
        WbError::InvalidSpec(msg.into())
    }

    /// True for errors that mean a checked statement came out false.
    pub fn is_verification(&self) -> bool {
        matches!(self, WbError::Verification { .. })
    }
}

pub type WbResult<T> = Result<T, WbError>;
