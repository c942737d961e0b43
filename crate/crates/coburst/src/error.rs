//! Error type shared across the library and the CLI.
//!
//! Every failure mode maps to one of four CLI exit codes: parse and
//! validation problems exit 2, I/O problems exit 3, and "not enough data to
//! produce a meaningful answer" exits 4. Success is 0.

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A file could not be parsed. `line` is 1-based.
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    /// An argument, field, or configuration value is out of contract.
    #[error("invalid {what}: {msg}")]
    Invalid { what: String, msg: String },
    /// The input is well-formed but too small for the requested computation.
    #[error("insufficient data: {0}")]
    Insufficient(String),
    /// Underlying I/O failure.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(what: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Invalid {
            what: what.into(),
            msg: msg.into(),
        }
    }

    pub fn parse(path: impl Into<String>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code the CLI uses for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Invalid { .. } => 2,
            Error::Io { .. } => 3,
            Error::Insufficient(_) => 4,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(Error::parse("x.jsonl", 3, "bad json").exit_code(), 2);
        assert_eq!(Error::invalid("lambda", "must lie in [0, 1]").exit_code(), 2);
        assert_eq!(
            Error::io("gone.csv", std::io::Error::from(std::io::ErrorKind::NotFound)).exit_code(),
            3
        );
        assert_eq!(Error::Insufficient("need 2 profiles".into()).exit_code(), 4);
    }

    #[test]
    fn parse_errors_name_path_and_line() {
        let msg = Error::parse("events.jsonl", 17, "expected value").to_string();
        assert!(msg.contains("events.jsonl:17"));
    }
}
