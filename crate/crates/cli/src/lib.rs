//! Command implementations behind the `c5cone` binary.
//!
//! Every command builds a JSON report; the plain-text output is rendered
//! from that same value.

pub mod document;
pub mod kernel;
pub mod report;
pub mod run;

use serde_json::{json, Value};
use thiserror::Error;

/// Exit status for an affirmative result.
pub const EXIT_OK: i32 = 0;
/// Exit status for a negative verdict.
pub const EXIT_NEGATIVE: i32 = 1;
/// Exit status for invalid input or a failed computation.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] c5cone::Error),
    #[error("invalid curve document: {0}")]
    Document(String),
    #[error("invalid kernel matrix: {0}")]
    Kernel(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid C5CONE_THREADS: {0}")]
    Threads(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Document(_) => "InvalidDocument",
            CliError::Kernel(_) => "InvalidKernel",
            CliError::Io { .. } => "Io",
            CliError::Threads(_) => "InvalidThreads",
        }
    }

    /// Message with one-based branch numbers, as everywhere else in the output.
    pub fn message(&self) -> String {
        match self {
            CliError::Core(c5cone::Error::IncompatibleSystem(i, j)) => format!(
                "tangent branches {} and {} share no special coordinate",
                i + 1,
                j + 1
            ),
            CliError::Core(c5cone::Error::DuplicateBranch(i, j)) => {
                format!("branches {} and {} have the same image", i + 1, j + 1)
            }
            other => other.to_string(),
        }
    }

    /// Structured diagnostic written to standard error.
    pub fn diagnostic(&self) -> Value {
        let mut details = serde_json::Map::new();
        if let CliError::Core(e) = self {
            match e {
                c5cone::Error::IncompatibleSystem(i, j) | c5cone::Error::DuplicateBranch(i, j) => {
                    details.insert("branches".into(), json!([i + 1, j + 1]));
                }
                c5cone::Error::NotPuiseuxForm { branch, .. }
                | c5cone::Error::NonPrimitiveParametrization { branch, .. } => {
                    details.insert("branch".into(), json!(branch));
                }
                _ => {}
            }
        }
        json!({
            "error": {
                "kind": self.kind(),
                "message": self.message(),
                "details": details,
            }
        })
    }
}
