use std::path::PathBuf;

use thiserror::Error;

pub type HarnessResult<T> = Result<T, HarnessError>;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_CHECK: i32 = 4;
pub const EXIT_DATA: i32 = 5;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A verification ran and did not hold.
    #[error("check failed: {0}")]
    Check(String),

    /// Input data the analysis cannot use (parse errors, undefined fits).
    #[error("{context}: {source}")]
    Data {
        context: String,
        #[source]
        source: trendlab_core::Error,
    },
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) => EXIT_USAGE,
            HarnessError::Io { .. } => EXIT_IO,
            HarnessError::Check(_) => EXIT_CHECK,
            HarnessError::Data { .. } => EXIT_DATA,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| HarnessError::Io { path, source }
    }

    pub(crate) fn data(context: impl Into<String>) -> impl FnOnce(trendlab_core::Error) -> Self {
        let context = context.into();
        move |source| HarnessError::Data { context, source }
    }
}

impl From<trendlab_core::Error> for HarnessError {
    fn from(e: trendlab_core::Error) -> Self {
        match e {
            trendlab_core::Error::InvalidParam { .. } | trendlab_core::Error::HorizonTooLarge { .. } => {
                HarnessError::Usage(e.to_string())
            }
            other => HarnessError::Data {
                context: "analysis".into(),
                source: other,
            },
        }
    }
}
