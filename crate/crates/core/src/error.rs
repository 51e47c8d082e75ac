use thiserror::Error;

/// Errors raised by constructions, evaluations and loaders.
#[derive(Debug, Error)]
pub enum Error {
    /// A word contains a token outside the expected alphabet.
    #[error("unknown symbol {symbol:?} at position {position}")]
    UnknownSymbol { symbol: String, position: usize },

    /// Arguments violate an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A model or distribution is malformed (normalisation, positivity, shape).
    #[error("invalid configuration: {0}")]
    Configuration(String),

    /// An exhaustive computation was asked to exceed its size cap.
    #[error("scale limit exceeded: {0}")]
    Scale(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! contract {
    ($($arg:tt)*) => {
        $crate::error::Error::Contract(format!($($arg)*))
    };
}
pub(crate) use contract;

macro_rules! config_err {
    ($($arg:tt)*) => {
        $crate::error::Error::Configuration(format!($($arg)*))
    };
}
pub(crate) use config_err;
