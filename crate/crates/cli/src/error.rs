use std::fmt;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 2;
    pub const VALIDATION: i32 = 3;
    pub const USAGE: i32 = 4;
    pub const NO_ROOT: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] entmoments::Error),
    #[error("{0}")]
    Usage(String),
    #[error("no root: {0}")]
    NoRoot(String),
    #[error("{context}: {source}")]
    At {
        context: String,
        #[source]
        source: Box<CliError>,
    },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use entmoments::Error as E;
        match self {
            CliError::Parse(_) => exit::PARSE,
            CliError::Core(E::Validation { .. } | E::Shape(_)) => exit::VALIDATION,
            CliError::Core(_) | CliError::Usage(_) | CliError::Io { .. } => exit::USAGE,
            CliError::NoRoot(_) => exit::NO_ROOT,
            CliError::At { source, .. } => source.exit_code(),
        }
    }

    pub fn context(self, ctx: impl fmt::Display) -> CliError {
        CliError::At {
            context: ctx.to_string(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
