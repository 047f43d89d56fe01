//! File formats, run configuration, deterministic reports and the
//! `zeroprobe` command line, on top of `zeroprobe-core`.

pub mod cli;
pub mod config;
pub mod input;
pub mod output;
pub mod scan;

pub use config::{OutputFormat, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("heights are not strictly increasing at lines {0:?}")]
    Monotonicity(Vec<usize>),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] zeroprobe_core::Error),
}
