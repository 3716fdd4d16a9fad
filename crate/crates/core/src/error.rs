use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    /// A T3 arrival needs two distinct nodes.
    #[error("infeasible T3 arrival: the graph has a single node")]
    InfeasibleArrival,

    #[error("value outside the domain: {0}")]
    Domain(String),

    #[error("exponent estimator undefined: {0}")]
    EstimatorUndefined(String),

    #[error("too few observations: {got} (need at least {need})")]
    TooFewSamples { got: usize, need: usize },

    #[error("horizon {horizon} exceeds the enumeration limit {limit}")]
    HorizonTooLarge { horizon: u64, limit: u64 },

    #[error("empty input")]
    EmptyInput,

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.into(),
        }
    }
}
