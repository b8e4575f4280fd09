use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cap exceeded for {what}: {value} > {limit}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
