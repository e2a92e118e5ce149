use thiserror::Error;

/// Errors raised across the crate. Contract violations indicate a caller
/// broke a documented precondition; game-logic errors indicate inconsistent
/// state reconstruction (e.g. an observation that matches no tracked history).
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("game logic error: {0}")]
    GameLogic(String),
    #[error("search error: {0}")]
    Search(String),
    #[error("non-finite value encountered in {0}")]
    NonFinite(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
    pub fn game(msg: impl Into<String>) -> Self {
        Error::GameLogic(msg.into())
    }
    pub fn search(msg: impl Into<String>) -> Self {
        Error::Search(msg.into())
    }
}
