//! Command-line front end for `dimgroup`.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict (or pro-fd),
//! 2 inconclusive or capped, 3 usage errors.

pub mod args;
pub mod commands;
pub mod config;
pub mod report;

pub use args::Cli;
pub use commands::run;
pub use report::Report;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// A failed run with its exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<dimgroup::Error> for CliError {
    fn from(e: dimgroup::Error) -> Self {
        use dimgroup::Error as E;
        let code = match e {
            E::ApproximationExhausted { .. }
            | E::CapExceeded(_)
            | E::StageUnavailable { .. }
            | E::NotMaterialized { .. }
            | E::Verification(_) => EXIT_UNKNOWN,
            _ => EXIT_USAGE,
        };
        CliError { code, message: e.to_string() }
    }
}

/// A finished run: the report and the exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub code: i32,
}
