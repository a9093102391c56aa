use std::fmt;

/// Exit statuses of the command-line tool.
pub mod exit {
    pub const OK: i32 = 0;
    pub const DOMAIN: i32 = 1;
    pub const RESOURCE: i32 = 2;
    pub const VERIFICATION: i32 = 3;
}

/// A malformed JSON document, located by a JSON pointer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    pub pointer: String,
    pub message: String,
}

impl FieldError {
    pub fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Self { pointer: pointer.into(), message: message.into() }
    }
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{at}: {}", self.message)
    }
}

impl std::error::Error for FieldError {}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed input at {0}")]
    Field(#[from] FieldError),
    #[error(transparent)]
    Core(#[from] s1deg_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource() => exit::RESOURCE,
            _ => exit::DOMAIN,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
