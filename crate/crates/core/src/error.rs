use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("color count mismatch: {0} vs {1}")]
    ColorMismatch(usize, usize),
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("support index {index} exceeds truncation {bound}")]
    SupportExceeds { index: usize, bound: usize },
    #[error("bound exceeded: need {needed}, allowed {bound}")]
    BoundExceeded { needed: u128, bound: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("element does not match pair: {0}")]
    SpecMismatch(String),
    #[error("unlabeled face present")]
    Unlabeled,
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
