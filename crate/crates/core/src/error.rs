use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ill-typed: {0}")]
    IllTyped(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid green position {0}")]
    InvalidPosition(String),
    #[error("term is not ground: {0}")]
    NonGround(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("problem too large for the ground oracle: {0}")]
    TooLarge(String),
    #[error("corrupt proof log: {0}")]
    CorruptLog(String),
    #[error("bad option: {0}")]
    BadOption(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
