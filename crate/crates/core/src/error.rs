use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} out of range for a ground set of size {n}")]
    OutOfRange { element: usize, n: usize },
    #[error("{what}: size {size} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("schema error at `{path}`: {msg}")]
    Schema { path: String, msg: String },
    #[error("internal invariant breached: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: &'static str, size: impl TryInto<u128>, cap: impl TryInto<u128>) -> Error {
        Error::CapExceeded {
            what,
            size: size.try_into().unwrap_or(u128::MAX),
            cap: cap.try_into().unwrap_or(u128::MAX),
        }
    }
}

macro_rules! contract {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::Error::Contract(format!($($arg)+)));
        }
    };
}

macro_rules! internal {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::Error::Internal(format!($($arg)+)));
        }
    };
}

pub(crate) use contract;
#[allow(unused_imports)]
pub(crate) use internal;
