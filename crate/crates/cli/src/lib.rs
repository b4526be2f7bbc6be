//! Command-line front end for the spectool toolkit.
//!
//! Each command turns a [`RunConfig`] into [`Artifacts`] plus a list of
//! [`Assertion`]s; [`run`] writes the artifacts and reports which assertions
//! failed.

pub mod commands;
pub mod config;
pub mod output;

use std::path::{Path, PathBuf};

use serde::Serialize;

pub use config::{Command, Params, RunConfig};
pub use output::{emit_report, Artifacts};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid config key `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Compute(#[from] spectool_core::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// One enabled check; its `id` names the inequality or property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    pub fn new(id: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            id: id.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub assertions: Vec<Assertion>,
}

impl RunOutcome {
    pub fn failing(&self) -> Vec<&str> {
        self.assertions
            .iter()
            .filter(|a| !a.passed)
            .map(|a| a.id.as_str())
            .collect()
    }

    pub fn exit_code(&self) -> i32 {
        if self.failing().is_empty() {
            0
        } else {
            1
        }
    }
}

/// Runs the configured command and writes its files into `config.out`.
pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let (mut artifacts, assertions) = commands::execute(config.command, &config.params)?;
    if let serde_json::Value::Object(m) = &mut artifacts.report {
        m.insert("command".into(), config.command.name().into());
        m.insert("params".into(), config.params.echo());
        m.insert(
            "assertions".into(),
            serde_json::to_value(&assertions).expect("assertions serialise"),
        );
        let status = if assertions.iter().all(|a| a.passed) {
            "pass"
        } else {
            "fail"
        };
        m.insert("status".into(), status.into());
    }
    let files = emit_report(&artifacts, &config.out)?;
    Ok(RunOutcome { files, assertions })
}
