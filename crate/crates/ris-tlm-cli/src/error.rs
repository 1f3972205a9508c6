//! CLI error type carrying the process exit code.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numeric or I/O failure
//! during a run, 4 validation FAIL from `validate-pec`.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration: unreadable file, parse error, unknown key,
    /// out-of-domain value, or a subcommand's input requirement not met.
    Config(String),
    /// The model or an output write failed after the configuration was
    /// accepted (singular combination, non-finite value, I/O).
    Runtime(String),
    /// A validation subcommand ran to completion and reported FAIL.
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
            CliError::Validation(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Runtime(msg) => write!(f, "error: {msg}"),
            CliError::Validation(msg) => write!(f, "validation failed: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;

/// Classify a library result by the phase it belongs to: errors while
/// interpreting configuration values are the user's to fix (exit 2),
/// errors during the run are numeric/runtime failures (exit 3).
pub trait Phase<T> {
    fn config_phase(self) -> CliResult<T>;
    fn run_phase(self) -> CliResult<T>;
}

impl<T> Phase<T> for ris_tlm::Result<T> {
    fn config_phase(self) -> CliResult<T> {
        self.map_err(|e| CliError::Config(e.to_string()))
    }

    fn run_phase(self) -> CliResult<T> {
        self.map_err(|e| CliError::Runtime(e.to_string()))
    }
}
