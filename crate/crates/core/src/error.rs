use thiserror::Error;

/// Failure categories shared by every operation in the crate.
///
/// Each variant maps to a stable process exit code, see [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Precondition(_) => 3,
            Error::Budget(_) => 4,
            Error::Verification(_) => 5,
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Precondition(_) => "precondition",
            Error::Budget(_) => "budget",
            Error::Verification(_) => "verification",
        }
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
