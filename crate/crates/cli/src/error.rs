use std::fmt;

use thiserror::Error;

/// Malformed scenario or flag input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    /// Dotted path of the offending field, e.g. `gas.mass`.
    pub field: Option<String>,
    pub message: String,
}

impl ParseError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            column: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}")?;
            if let Some(col) = self.column {
                write!(f, ", column {col}")?;
            }
            f.write_str(": ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "field `{field}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError {
            line: Some(e.line()),
            column: Some(e.column()),
            field: None,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    #[error("{context}: {source}")]
    Domain {
        context: String,
        #[source]
        source: thermowit::Error,
    },

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn domain(context: impl Into<String>, source: thermowit::Error) -> Self {
        CliError::Domain {
            context: context.into(),
            source,
        }
    }

    /// 1 for domain and I/O failures, 2 for malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } | CliError::Io(_) => 1,
            CliError::Parse(_) | CliError::Usage(_) => 2,
        }
    }
}
