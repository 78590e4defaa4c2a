//! Command-line front end: builds cluster categories, certifies twin
//! cotorsion pairs, runs the exactness suites and checks localisations,
//! emitting JSON reports and DOT quivers.

pub mod bundle;
pub mod commands;
pub mod config;
pub mod dot;
pub mod report;

use std::fmt;

use serde_json::Value;
use twinheart_core::Error;

use config::{Cli, Command, RunConfig};

/// Exit code for a run whose checks all passed.
pub const EXIT_PASS: u8 = 0;
/// Exit code for a verified property that failed.
pub const EXIT_FAIL: u8 = 1;
/// Exit code for usage, configuration and IO errors.
pub const EXIT_USAGE: u8 = 2;

/// A command's report, its verdict and a human-readable summary.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    /// Pretty JSON with a trailing newline; stable for a fixed report.
    pub fn json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.report).expect("reports serialize");
        text.push('\n');
        text
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    /// Bad input is a usage error; anything else means a computation broke
    /// down, which counts as a failed verification.
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::FieldMismatch(..)
            | Error::Dimension(_)
            | Error::Input(_)
            | Error::Unsupported(_)
            | Error::OracleUnavailable(_)
            | Error::CriterionInapplicable(_) => EXIT_USAGE,
            Error::KernelNotFound(_) | Error::Internal(_) => EXIT_FAIL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// The report file written by `verify-all`.
pub const VERIFY_ALL_REPORT: &str = "verify-all.json";

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Build { target } => commands::build(&RunConfig::new(g, target)?),
        Command::Twin { target } => commands::twin(&RunConfig::new(g, target)?),
        Command::Heart { target } => commands::heart(&RunConfig::new(g, target)?),
        Command::Classify { target, dot } => commands::classify(&RunConfig::new(g, target)?, dot.as_deref()),
        Command::Check {
            target,
            suite,
            exhaustive,
            max_mult,
            dot,
        } => commands::check(
            &RunConfig::new(g, target)?,
            *suite,
            *exhaustive,
            *max_mult,
            dot.as_deref(),
        ),
        Command::Localise {
            target,
            verify_equivalence,
            inventory,
        } => commands::localise(&RunConfig::new(g, target)?, *verify_equivalence, inventory),
        Command::Export { target } => commands::export(&RunConfig::new(g, target)?),
        Command::VerifyAll { target } => {
            let cfg = RunConfig::new(g, target)?;
            let outcome = commands::verify_all(&cfg)?;
            commands::write(&cfg.out_dir.join(VERIFY_ALL_REPORT), &outcome.json())?;
            Ok(outcome)
        }
    }
}
