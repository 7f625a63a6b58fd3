//! Error types shared across the crate.
//!
//! Failures fall into two families: configuration errors (bad parameters,
//! malformed configs, dimension mismatches) and numerical divergence (a
//! filter update produced a non-finite weight). The two are kept as distinct
//! types so callers can map them to distinct exit codes.

use thiserror::Error;

use crate::algorithms::AlgorithmKind;

/// Invalid configuration: rejected parameters, malformed config documents,
/// or mismatched vector lengths.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    /// A value is out of range or otherwise unusable. `key` names the
    /// offending config key or argument.
    #[error("{key}: {reason}")]
    InvalidValue { key: String, reason: String },

    /// A key required by the algorithm kind is absent.
    #[error("missing required key `{key}` for {context}")]
    MissingKey { key: &'static str, context: String },

    /// A key was supplied that the algorithm kind does not use.
    #[error("key `{key}` does not apply to {context}")]
    InapplicableKey { key: &'static str, context: String },

    /// Two vectors that must share a length do not.
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// The sweep block references a label that is not configured.
    #[error("sweep references unknown algorithm label `{0}`")]
    UnknownLabel(String),

    /// Two algorithm entries share a label.
    #[error("duplicate algorithm label `{0}`")]
    DuplicateLabel(String),

    /// The config document failed to parse.
    #[error("config parse error: {0}")]
    Parse(String),
}

impl ConfigError {
    pub fn invalid(key: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError::InvalidValue {
            key: key.into(),
            reason: reason.into(),
        }
    }
}

/// A filter update produced a non-finite weight. The step is not accepted;
/// the state must be discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{kind} update diverged at iteration {iteration}: non-finite weight")]
pub struct Divergence {
    pub kind: AlgorithmKind,
    pub iteration: u64,
}

/// Error from a single filter step.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Diverged(#[from] Divergence),
}
