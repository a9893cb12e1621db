use thiserror::Error;

/// Errors raised by the library. Budget refusals are kept separate from
/// parameter errors so callers can tell "too big" apart from "wrong".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("budget exceeded: {what} is {count}, limit {limit}")]
    Budget {
        what: String,
        count: String,
        limit: String,
    },

    #[error("lattice conditions violated: {0}")]
    LatticeViolation(String),

    #[error("torsion in degree {degree}: {factors}")]
    Torsion { degree: i64, factors: String },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, count: impl ToString, limit: impl ToString) -> Self {
        Error::Budget {
            what: what.into(),
            count: count.to_string(),
            limit: limit.to_string(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
