use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Words of the form `L^n` / `R^n` have trace 2 and no hyperbolic length.
    #[error("cusp word {0}: trace 2, length undefined")]
    CuspWord(String),

    /// Exhaustive work refused because of its size.
    #[error("guard exceeded: {what} would require {required} cases (limit {limit})")]
    GuardExceeded {
        what: &'static str,
        required: String,
        limit: String,
    },

    #[error("conditioning event has probability zero")]
    UndefinedCondition,

    #[error(
        "acceptance rate {rate:.3e} below floor {floor:.3e} \
         ({accepted} of {requested} samples accepted)"
    )]
    AcceptanceTooLow {
        rate: f64,
        floor: f64,
        accepted: u64,
        requested: u64,
    },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for errors caused by exhaustive-size guards.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
