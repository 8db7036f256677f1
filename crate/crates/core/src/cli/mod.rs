//! Front end: the scenario language, command reports and the randomized checker.

pub mod check;
pub mod dsl;
pub mod run;
mod table;

pub use check::{check_desiderata, property_names, CheckConfig, CheckReport, Counterexample, Mutation, PropertyResult};
pub use dsl::{parse_spec, print_spec, Command, Scenario, Value};
pub use run::{run_command, Format, Report};

use thiserror::Error;

/// Errors surfaced by the front end, each with a diagnostic code and an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("[P001] {line}:{col}: expected {}, found {found}", expected.join(" or "))]
    Parse { line: usize, col: usize, expected: Vec<String>, found: String },

    #[error("[{code}] {line}:{col}: {message}")]
    Semantic { line: usize, col: usize, code: &'static str, message: String },

    #[error("[U001] {0}")]
    Usage(String),

    #[error("[{}] {0}", .0.code())]
    Module(#[from] crate::Error),
}

impl CliError {
    pub(crate) fn parse(line: usize, col: usize, expected: &[&str], found: &str) -> CliError {
        CliError::Parse { line, col, expected: expected.iter().map(|s| s.to_string()).collect(), found: found.to_string() }
    }

    pub(crate) fn semantic(line: usize, col: usize, err: crate::Error) -> CliError {
        CliError::Semantic { line, col, code: err.code(), message: err.to_string() }
    }

    /// 1 for syntax and usage errors, 2 for semantic and module errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 1,
            CliError::Semantic { .. } | CliError::Module(_) => 2,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "P001",
            CliError::Semantic { code, .. } => code,
            CliError::Usage(_) => "U001",
            CliError::Module(e) => e.code(),
        }
    }
}
