use alloc::string::String;

/// Density-matrix invariant that failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    Hermiticity,
    Trace,
    Positivity,
    Normalization,
}

impl core::fmt::Display for Invariant {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Invariant::Hermiticity => "hermiticity",
            Invariant::Trace => "trace",
            Invariant::Positivity => "positivity",
            Invariant::Normalization => "normalization",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("validation error: {invariant} violated (deviation {deviation:e})")]
    Validation { invariant: Invariant, deviation: f64 },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("parameter {value} outside domain [{lo}, {hi}] of family {family}")]
    Domain {
        family: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = core::result::Result<T, Error>;
