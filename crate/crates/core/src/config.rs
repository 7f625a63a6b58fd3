//! Declarative experiment configuration.
//!
//! Configs are JSON documents parsed in strict mode: unknown keys are
//! rejected so a mistyped hyperparameter name fails loudly instead of
//! silently running with defaults. [`ExperimentConfig::validate`] checks
//! every cross-field rule (label uniqueness, per-kind parameter
//! requirements, sweep applicability) after parsing.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algorithms::{AlgorithmKind, AlgorithmParams};
use crate::error::ConfigError;
use crate::scalar::Scalar;

/// One labeled algorithm instance. The label names CSV columns and
/// divergence reports, and is the handle sweeps refer to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct AlgorithmEntry<T> {
    pub label: String,
    pub kind: AlgorithmKind,
    pub step_size: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reg_param: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reweight_factor: Option<T>,
}

impl<T: Scalar> AlgorithmEntry<T> {
    pub fn new(label: impl Into<String>, params: AlgorithmParams<T>) -> Self {
        Self {
            label: label.into(),
            kind: params.kind,
            step_size: params.step_size,
            threshold: params.threshold,
            reg_param: params.reg_param,
            reweight_factor: params.reweight_factor,
        }
    }

    pub fn params(&self) -> AlgorithmParams<T> {
        AlgorithmParams {
            kind: self.kind,
            step_size: self.step_size,
            threshold: self.threshold,
            reg_param: self.reg_param,
            reweight_factor: self.reweight_factor,
        }
    }
}

/// Which hyperparameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    StepSize,
    Threshold,
    RegParam,
    ReweightFactor,
}

impl SweepParameter {
    /// The config key this parameter corresponds to.
    pub fn key(self) -> &'static str {
        match self {
            SweepParameter::StepSize => "step_size",
            SweepParameter::Threshold => "threshold",
            SweepParameter::RegParam => "reg_param",
            SweepParameter::ReweightFactor => "reweight_factor",
        }
    }
}

/// Grid sweep over one hyperparameter of one configured algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig<T> {
    pub algorithm_label: String,
    pub parameter: SweepParameter,
    pub grid: Vec<T>,
}

/// Full declarative description of an experiment run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct ExperimentConfig<T> {
    /// Channel length N.
    pub n_taps: usize,
    /// Number of nonzero channel taps K.
    pub sparsity: usize,
    /// Receive SNR in dB under unit transmission power.
    pub snr_db: T,
    /// Iterations (samples) per trial.
    pub iterations: usize,
    /// Number of Monte Carlo trials R.
    pub trials: usize,
    /// Master seed; every random stream derives from it deterministically.
    pub seed: u64,
    pub algorithms: Vec<AlgorithmEntry<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig<T>>,
    /// Number of trailing iterations averaged into the steady-state MSD.
    /// Defaults to the final 10% of iterations (at least 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steady_window: Option<usize>,
}

impl<T: Scalar> ExperimentConfig<T> {
    /// Parses a JSON document and validates it.
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError>
    where
        T: DeserializeOwned,
    {
        let config: Self =
            serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Checks the scenario fields alone (channel, noise, trial counts),
    /// ignoring the algorithm list and sweep block. Harness entry points
    /// that take explicit algorithm params rely on this subset.
    pub fn validate_scenario(&self) -> Result<(), ConfigError> {
        if self.n_taps < 1 {
            return Err(ConfigError::invalid("n_taps", "must be at least 1"));
        }
        if self.sparsity < 1 || self.sparsity > self.n_taps {
            return Err(ConfigError::invalid(
                "sparsity",
                format!(
                    "out of range: need 1 <= sparsity <= n_taps, got {} with n_taps {}",
                    self.sparsity, self.n_taps
                ),
            ));
        }
        if self.snr_db.is_nan() || self.snr_db == T::neg_infinity() {
            return Err(ConfigError::invalid(
                "snr_db",
                "must be a number (positive infinity is allowed and means noise-free)",
            ));
        }
        if self.iterations < 1 {
            return Err(ConfigError::invalid("iterations", "must be at least 1"));
        }
        if self.trials < 1 {
            return Err(ConfigError::invalid("trials", "must be at least 1"));
        }
        Ok(())
    }

    /// Checks every invariant the harness relies on. Parameter errors name
    /// the offending key and the algorithm label they belong to.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.validate_scenario()?;
        if self.algorithms.is_empty() {
            return Err(ConfigError::invalid(
                "algorithms",
                "at least one algorithm must be configured",
            ));
        }
        for (i, entry) in self.algorithms.iter().enumerate() {
            if entry.label.is_empty() {
                return Err(ConfigError::invalid(
                    format!("algorithms[{i}].label"),
                    "must not be empty",
                ));
            }
            if self.algorithms[..i].iter().any(|e| e.label == entry.label) {
                return Err(ConfigError::DuplicateLabel(entry.label.clone()));
            }
            entry.params().validate().map_err(|e| match e {
                ConfigError::InvalidValue { key, reason } => ConfigError::InvalidValue {
                    key: format!("algorithms[{i}] (`{}`) {key}", entry.label),
                    reason,
                },
                ConfigError::MissingKey { key, .. } => ConfigError::MissingKey {
                    key,
                    context: format!("algorithm `{}` of kind `{}`", entry.label, entry.kind),
                },
                ConfigError::InapplicableKey { key, .. } => ConfigError::InapplicableKey {
                    key,
                    context: format!("algorithm `{}` of kind `{}`", entry.label, entry.kind),
                },
                other => other,
            })?;
        }
        if let Some(window) = self.steady_window {
            if window < 1 || window > self.iterations {
                return Err(ConfigError::invalid(
                    "steady_window",
                    format!(
                        "must satisfy 1 <= steady_window <= iterations, got {window} with iterations {}",
                        self.iterations
                    ),
                ));
            }
        }
        if let Some(sweep) = &self.sweep {
            let entry = self
                .algorithm(&sweep.algorithm_label)
                .ok_or_else(|| ConfigError::UnknownLabel(sweep.algorithm_label.clone()))?;
            if sweep.grid.is_empty() {
                return Err(ConfigError::invalid("sweep.grid", "must not be empty"));
            }
            for (j, &value) in sweep.grid.iter().enumerate() {
                let substituted = substitute_parameter(&entry.params(), sweep.parameter, value)?;
                substituted.validate().map_err(|e| {
                    ConfigError::invalid(
                        format!("sweep.grid[{j}]"),
                        format!("value {value} invalid for `{}`: {e}", entry.label),
                    )
                })?;
            }
        }
        Ok(())
    }

    /// Looks up an algorithm entry by label.
    pub fn algorithm(&self, label: &str) -> Option<&AlgorithmEntry<T>> {
        self.algorithms.iter().find(|e| e.label == label)
    }

    /// Effective steady-state window: the configured value, or the final
    /// 10% of iterations (at least one sample).
    pub fn steady_window_len(&self) -> usize {
        self.steady_window
            .unwrap_or_else(|| (self.iterations / 10).max(1))
    }
}

/// Returns a copy of `params` with one hyperparameter replaced. Fails if
/// the parameter does not apply to the algorithm kind.
pub fn substitute_parameter<T: Scalar>(
    params: &AlgorithmParams<T>,
    parameter: SweepParameter,
    value: T,
) -> Result<AlgorithmParams<T>, ConfigError> {
    let mut out = *params;
    let applicable = match parameter {
        SweepParameter::StepSize => {
            out.step_size = value;
            true
        }
        SweepParameter::Threshold => {
            out.threshold = Some(value);
            params.kind.uses_threshold()
        }
        SweepParameter::RegParam => {
            out.reg_param = Some(value);
            params.kind.uses_reg_param()
        }
        SweepParameter::ReweightFactor => {
            out.reweight_factor = Some(value);
            params.kind.uses_reweight_factor()
        }
    };
    if !applicable {
        return Err(ConfigError::InapplicableKey {
            key: parameter.key(),
            context: format!("algorithm kind `{}`", params.kind),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_json() -> String {
        r#"{
            "n_taps": 16,
            "sparsity": 2,
            "snr_db": 10.0,
            "iterations": 1000,
            "trials": 1000,
            "seed": 1,
            "algorithms": [
                {"label": "lmsf", "kind": "lmsf", "step_size": 0.04, "threshold": 0.8}
            ]
        }"#
        .to_string()
    }

    #[test]
    fn minimal_config_parses() {
        let cfg = ExperimentConfig::<f64>::from_json_str(&minimal_json()).unwrap();
        assert_eq!(cfg.n_taps, 16);
        assert_eq!(cfg.algorithms.len(), 1);
        assert_eq!(cfg.algorithms[0].kind, AlgorithmKind::Lmsf);
        assert_eq!(cfg.steady_window_len(), 100);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let text = minimal_json().replace("\"seed\": 1", "\"seed\": 1, \"trialz\": 3");
        let err = ExperimentConfig::<f64>::from_json_str(&text).unwrap_err();
        assert!(err.to_string().contains("trialz"), "{err}");
    }

    #[test]
    fn unknown_key_in_algorithm_entry_is_rejected() {
        // a typo in a per-algorithm key must not be silently dropped
        let text = minimal_json().replace("\"threshold\": 0.8", "\"treshold\": 0.8");
        let err = ExperimentConfig::<f64>::from_json_str(&text).unwrap_err();
        assert!(err.to_string().contains("treshold"), "{err}");
    }

    #[test]
    fn unknown_algorithm_kind_is_rejected() {
        let text = minimal_json().replace("\"kind\": \"lmsf\"", "\"kind\": \"zz-lms\"");
        let err = ExperimentConfig::<f64>::from_json_str(&text).unwrap_err();
        assert!(err.to_string().contains("zz-lms"), "{err}");
    }

    #[test]
    fn zero_sparsity_is_rejected() {
        let text = minimal_json().replace("\"sparsity\": 2", "\"sparsity\": 0");
        let err = ExperimentConfig::<f64>::from_json_str(&text).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("sparsity") && msg.contains("out of range"),
            "{msg}"
        );
    }

    #[test]
    fn missing_reweight_factor_is_named() {
        let text = minimal_json().replace(
            r#"{"label": "lmsf", "kind": "lmsf", "step_size": 0.04, "threshold": 0.8}"#,
            r#"{"label": "rza", "kind": "rza-lms", "step_size": 0.04, "reg_param": 0.8}"#,
        );
        let err = ExperimentConfig::<f64>::from_json_str(&text).unwrap_err();
        assert!(err.to_string().contains("reweight_factor"), "{err}");
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let text = minimal_json().replace(
            r#"{"label": "lmsf", "kind": "lmsf", "step_size": 0.04, "threshold": 0.8}"#,
            r#"{"label": "a", "kind": "lms", "step_size": 0.04},
               {"label": "a", "kind": "lmf", "step_size": 0.05}"#,
        );
        let err = ExperimentConfig::<f64>::from_json_str(&text).unwrap_err();
        assert!(matches!(err, ConfigError::DuplicateLabel(_)));
    }

    #[test]
    fn sweep_label_must_exist() {
        let text = minimal_json().replace(
            "\"seed\": 1",
            r#""seed": 1, "sweep": {"algorithm_label": "nope", "parameter": "reg_param", "grid": [0.1]}"#,
        );
        let err = ExperimentConfig::<f64>::from_json_str(&text).unwrap_err();
        assert!(matches!(err, ConfigError::UnknownLabel(_)));
    }

    #[test]
    fn sweep_parameter_must_apply_to_kind() {
        let text = minimal_json().replace(
            "\"seed\": 1",
            r#""seed": 1, "sweep": {"algorithm_label": "lmsf", "parameter": "reweight_factor", "grid": [10.0]}"#,
        );
        let err = ExperimentConfig::<f64>::from_json_str(&text).unwrap_err();
        assert!(err.to_string().contains("reweight_factor"), "{err}");
    }

    #[test]
    fn sweep_grid_values_are_checked() {
        let text = minimal_json().replace(
            "\"seed\": 1",
            r#""seed": 1, "sweep": {"algorithm_label": "lmsf", "parameter": "threshold", "grid": [0.8, -1.0]}"#,
        );
        let err = ExperimentConfig::<f64>::from_json_str(&text).unwrap_err();
        assert!(err.to_string().contains("sweep.grid[1]"), "{err}");
    }

    #[test]
    fn steady_window_bounds() {
        let text = minimal_json().replace("\"seed\": 1", "\"seed\": 1, \"steady_window\": 1001");
        assert!(ExperimentConfig::<f64>::from_json_str(&text).is_err());
        let text = minimal_json().replace("\"seed\": 1", "\"seed\": 1, \"steady_window\": 50");
        let cfg = ExperimentConfig::<f64>::from_json_str(&text).unwrap();
        assert_eq!(cfg.steady_window_len(), 50);
    }

    #[test]
    fn serialization_round_trips() {
        let cfg = ExperimentConfig::<f64>::from_json_str(&minimal_json()).unwrap();
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        let back = ExperimentConfig::<f64>::from_json_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn substitute_parameter_sets_and_rejects() {
        let params = AlgorithmParams::za_lmsf(0.04, 0.8, 0.0004);
        let out = substitute_parameter(&params, SweepParameter::RegParam, 0.001).unwrap();
        assert_eq!(out.reg_param, Some(0.001));
        assert!(substitute_parameter(&params, SweepParameter::ReweightFactor, 10.0).is_err());
        let out = substitute_parameter(&params, SweepParameter::StepSize, 0.01).unwrap();
        assert_eq!(out.step_size, 0.01);
    }
}
