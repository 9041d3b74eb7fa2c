use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

/// Failures surfaced by the command-line front end. Each maps to a process
/// exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message} at line {line} column {column}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },
    #[error("{}", match .line {
        Some(l) => format!("line {l}: {field}: {message}"),
        None => format!("{field}: {message}"),
    })]
    Validation {
        field: String,
        message: String,
        line: Option<usize>,
    },
    #[error("{0}")]
    Solver(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Serialize)]
struct Record<'a> {
    error: &'static str,
    exit_code: i32,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } => 2,
            CliError::Solver(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Validation { .. } => "validation",
            CliError::Solver(_) => "solver",
            CliError::Io { .. } => "io",
        }
    }

    /// Single-line JSON description for stderr.
    pub fn to_json(&self) -> String {
        let mut rec = Record {
            error: self.kind(),
            exit_code: self.exit_code(),
            message: self.to_string(),
            field: None,
            line: None,
            column: None,
            path: None,
        };
        match self {
            CliError::Parse { line, column, .. } => {
                rec.line = Some(*line);
                rec.column = Some(*column);
            }
            CliError::Validation { field, line, .. } => {
                rec.field = Some(field);
                rec.line = *line;
            }
            CliError::Io { path, .. } => rec.path = Some(path.display().to_string()),
            CliError::Solver(_) => {}
        }
        serde_json::to_string(&rec).expect("plain record")
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation {
            field: field.into(),
            message: message.into(),
            line: None,
        }
    }
}

impl From<eigenfilter::Error> for CliError {
    fn from(e: eigenfilter::Error) -> Self {
        use eigenfilter::Error as E;
        match e {
            E::Spec { field, message } => CliError::validation(field, message),
            E::InvalidGrid(_) | E::Dimension(_) | E::NonFinite(_) | E::Coverage(_) => {
                CliError::validation("input", e.to_string())
            }
            E::Convergence { .. } | E::ConstraintRank(_) | E::Solver(_) => {
                CliError::Solver(e.to_string())
            }
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
