use thiserror::Error;

/// Failures shared by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator factor vanished at the supplied parameters.
    #[error("singular parameters: {factor} vanishes")]
    ParameterSingular { factor: String },

    #[error("division by zero in {0}")]
    DivisionByZero(String),

    /// A Beta-type moment whose integral does not converge.
    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("expansion exceeds the size guard ({terms} > {limit} terms)")]
    SizeGuard { terms: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn singular(factor: impl Into<String>) -> Self {
        Error::ParameterSingular {
            factor: factor.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
