use thiserror::Error;

/// Errors raised by the library. Every variant carries a human readable
/// message naming the violated precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("character lives on the wrong group: {0}")]
    GroupMismatch(String),
    #[error("enumeration budget exceeded: group of order {order} > budget {budget}")]
    Budget { order: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
