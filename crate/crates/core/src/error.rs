use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value violates a precondition.
    #[error("invalid input `{field}`: {reason}")]
    Input { field: String, reason: String },

    /// Reference data (parameter tables, catalog entries) is missing or unusable.
    #[error("data error: {0}")]
    Data(String),

    /// Numerical integration failed.
    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("failed to parse {what}: {message}")]
    Parse { what: String, message: String },

    #[error("validation failed for `{field}`: {rule}")]
    Validation { field: String, rule: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn input(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn validation(field: impl Into<String>, rule: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            rule: rule.into(),
        }
    }
}

/// Rejects NaN/inf and values not strictly greater than zero.
pub(crate) fn ensure_positive(field: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::input(
            field,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

pub(crate) fn ensure_non_negative(field: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::input(
            field,
            format!("must be finite and >= 0, got {value}"),
        ))
    }
}
