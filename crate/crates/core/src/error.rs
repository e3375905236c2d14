use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("a cycle needs at least 3 entries, got {0}")]
    Length(usize),
    #[error("not a Fulton cycle: {0}")]
    NotFultonCycle(String),
    #[error("model `{0}` failed the Moufang check")]
    ModelNotMoufang(String),
    #[error("no transition registered from chart {0} to chart {1}")]
    NoOverlap(usize, usize),
    #[error("cocycle failure on triple ({0}, {1}, {2})")]
    CocycleFailure(usize, usize, usize),
    #[error("invalid value: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
