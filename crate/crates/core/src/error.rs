use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("invalid value {value} for `{key}`: {reason}")]
    OutOfRange {
        key: &'static str,
        value: f64,
        reason: &'static str,
    },
}

impl ConfigError {
    pub(crate) fn out_of_range(key: &'static str, value: f64, reason: &'static str) -> Self {
        Self::OutOfRange { key, value, reason }
    }

    /// Name of the offending configuration field.
    pub fn key(&self) -> &'static str {
        match self {
            Self::OutOfRange { key, .. } => key,
        }
    }
}
