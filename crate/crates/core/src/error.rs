use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph: {0}")]
    Graph(String),
    #[error("ideal: {0}")]
    Ideal(String),
    #[error("cover: {0}")]
    Cover(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("engines disagree: {0}")]
    EngineMismatch(String),
}
