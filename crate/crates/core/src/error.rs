use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cyclotomic field order {0} exceeds the supported cap")]
    OrderTooLarge(u32),
    #[error("bad scalar literal at byte {pos}: {msg}")]
    Literal { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported group: {0}")]
    Unsupported(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// Eigenvalue clustering or path matching could not be certified.
    #[error("numeric ambiguity: {0}")]
    NumericAmbiguity(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
