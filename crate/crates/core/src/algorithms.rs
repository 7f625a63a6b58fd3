//! Stochastic-gradient adaptive filters: LMS, LMF, LMS/F, and their
//! zero-attracting (sparsity-aware) variants.
//!
//! All seven update rules share the same skeleton. With weight vector `h`,
//! regressor window `x`, observation `y`, prediction `h^T x` and a-priori
//! error `e = y - h^T x`:
//!
//! ```text
//! LMS      h += mu * e * x
//! LMF      h += mu * e^3 * x
//! LMS/F    h += mu * e^3 * x / (e^2 + lambda)
//! ```
//!
//! The LMS/F rule interpolates between the two classical filters: for
//! `e^2 >> lambda` it approaches the LMS step `mu * e * x`, and for
//! `e^2 << lambda` it approaches an LMF step with step size `mu / lambda`.
//! Equivalently it is an LMS step scaled by the variable gain
//! `e^2 / (e^2 + lambda)` in `[0, 1)`, which shrinks as the filter
//! converges.
//!
//! The zero-attracting variants add an l1-penalty gradient that pulls every
//! coefficient toward zero by a fixed amount per step (ZA), or by an amount
//! that decays with coefficient magnitude so that dominant taps are spared
//! (reweighted ZA):
//!
//! ```text
//! ZA-*     h -= gamma * sgn(h)                      gamma = mu * rho
//! RZA-*    h -= gamma * sgn(h) / (1 + eps * |h|)    gamma = mu * rho / eps
//! ```
//!
//! Each rule is the stochastic gradient-descent step of an explicit cost
//! function ([`cost_lmsf`], [`cost_za`], [`cost_rza`]), which the test suite
//! verifies by finite differences.
//!
//! # References
//!
//! - S. Lim, "Combined LMS/F algorithm", Electronics Letters 33(6), 1997.
//! - E. Walach and B. Widrow, "The least mean fourth (LMF) adaptive
//!   algorithm and its family", IEEE Trans. Inf. Theory 30(2), 1984.
//! - Y. Chen, Y. Gu and A. O. Hero, "Sparse LMS for system
//!   identification", ICASSP 2009 (ZA-LMS and RZA-LMS baselines).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, Divergence, StepError};
use crate::scalar::{lit, Scalar};
use crate::signal::RegressorWindow;

/// The update rule a filter runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmKind {
    Lms,
    Lmf,
    Lmsf,
    ZaLms,
    RzaLms,
    ZaLmsf,
    RzaLmsf,
}

impl AlgorithmKind {
    /// All kinds, in the order used by comparison presets.
    pub const ALL: [AlgorithmKind; 7] = [
        AlgorithmKind::Lms,
        AlgorithmKind::Lmf,
        AlgorithmKind::Lmsf,
        AlgorithmKind::ZaLms,
        AlgorithmKind::RzaLms,
        AlgorithmKind::ZaLmsf,
        AlgorithmKind::RzaLmsf,
    ];

    /// Stable kebab-case name, identical to the serde encoding.
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Lms => "lms",
            AlgorithmKind::Lmf => "lmf",
            AlgorithmKind::Lmsf => "lmsf",
            AlgorithmKind::ZaLms => "za-lms",
            AlgorithmKind::RzaLms => "rza-lms",
            AlgorithmKind::ZaLmsf => "za-lmsf",
            AlgorithmKind::RzaLmsf => "rza-lmsf",
        }
    }

    /// True for the LMS/F family, which needs the threshold `lambda`.
    pub fn uses_threshold(self) -> bool {
        matches!(
            self,
            AlgorithmKind::Lmsf | AlgorithmKind::ZaLmsf | AlgorithmKind::RzaLmsf
        )
    }

    /// True for kinds with a sparsity penalty, which need `reg_param`.
    pub fn uses_reg_param(self) -> bool {
        matches!(
            self,
            AlgorithmKind::ZaLms
                | AlgorithmKind::RzaLms
                | AlgorithmKind::ZaLmsf
                | AlgorithmKind::RzaLmsf
        )
    }

    /// True for reweighted kinds, which need `reweight_factor`.
    pub fn uses_reweight_factor(self) -> bool {
        matches!(self, AlgorithmKind::RzaLms | AlgorithmKind::RzaLmsf)
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hyperparameters for one filter instance.
///
/// Which optional fields must be present depends on the kind: the LMS/F
/// family requires `threshold`, sparse kinds require `reg_param`, and
/// reweighted kinds require `reweight_factor`. [`validate`](Self::validate)
/// enforces this strictly in both directions; a key that the kind does not
/// use is rejected rather than ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmParams<T> {
    pub kind: AlgorithmKind,
    /// Step size `mu` (> 0).
    pub step_size: T,
    /// Threshold `lambda` (> 0) of the LMS/F variable-gain denominator.
    pub threshold: Option<T>,
    /// Sparsity regularization weight `rho` (>= 0); 0 disables the penalty.
    pub reg_param: Option<T>,
    /// Reweighting factor `eps` (> 0); taps well above `1/eps` are spared.
    pub reweight_factor: Option<T>,
}

fn positive<T: Scalar>(x: T) -> bool {
    x.is_finite() && x > T::zero()
}

fn nonnegative<T: Scalar>(x: T) -> bool {
    x.is_finite() && x >= T::zero()
}

impl<T: Scalar> AlgorithmParams<T> {
    pub fn lms(step_size: T) -> Self {
        Self {
            kind: AlgorithmKind::Lms,
            step_size,
            threshold: None,
            reg_param: None,
            reweight_factor: None,
        }
    }

    pub fn lmf(step_size: T) -> Self {
        Self {
            kind: AlgorithmKind::Lmf,
            ..Self::lms(step_size)
        }
    }

    pub fn lmsf(step_size: T, threshold: T) -> Self {
        Self {
            kind: AlgorithmKind::Lmsf,
            threshold: Some(threshold),
            ..Self::lms(step_size)
        }
    }

    pub fn za_lms(step_size: T, reg_param: T) -> Self {
        Self {
            kind: AlgorithmKind::ZaLms,
            reg_param: Some(reg_param),
            ..Self::lms(step_size)
        }
    }

    pub fn rza_lms(step_size: T, reg_param: T, reweight_factor: T) -> Self {
        Self {
            kind: AlgorithmKind::RzaLms,
            reg_param: Some(reg_param),
            reweight_factor: Some(reweight_factor),
            ..Self::lms(step_size)
        }
    }

    pub fn za_lmsf(step_size: T, threshold: T, reg_param: T) -> Self {
        Self {
            kind: AlgorithmKind::ZaLmsf,
            threshold: Some(threshold),
            reg_param: Some(reg_param),
            ..Self::lms(step_size)
        }
    }

    pub fn rza_lmsf(step_size: T, threshold: T, reg_param: T, reweight_factor: T) -> Self {
        Self {
            kind: AlgorithmKind::RzaLmsf,
            threshold: Some(threshold),
            reg_param: Some(reg_param),
            reweight_factor: Some(reweight_factor),
            ..Self::lms(step_size)
        }
    }

    /// Checks ranges and that exactly the keys used by `kind` are present.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let context = || format!("algorithm kind `{}`", self.kind);
        if !positive(self.step_size) {
            return Err(ConfigError::invalid(
                "step_size",
                format!("must be a positive finite number, got {}", self.step_size),
            ));
        }
        match (self.kind.uses_threshold(), self.threshold) {
            (true, None) => {
                return Err(ConfigError::MissingKey {
                    key: "threshold",
                    context: context(),
                })
            }
            (true, Some(lambda)) if !positive(lambda) => {
                return Err(ConfigError::invalid(
                    "threshold",
                    format!("must be a positive finite number, got {lambda}"),
                ));
            }
            (false, Some(_)) => {
                return Err(ConfigError::InapplicableKey {
                    key: "threshold",
                    context: context(),
                })
            }
            _ => {}
        }
        match (self.kind.uses_reg_param(), self.reg_param) {
            (true, None) => {
                return Err(ConfigError::MissingKey {
                    key: "reg_param",
                    context: context(),
                })
            }
            (true, Some(rho)) if !nonnegative(rho) => {
                return Err(ConfigError::invalid(
                    "reg_param",
                    format!("must be a nonnegative finite number, got {rho}"),
                ));
            }
            (false, Some(_)) => {
                return Err(ConfigError::InapplicableKey {
                    key: "reg_param",
                    context: context(),
                })
            }
            _ => {}
        }
        match (self.kind.uses_reweight_factor(), self.reweight_factor) {
            (true, None) => {
                return Err(ConfigError::MissingKey {
                    key: "reweight_factor",
                    context: context(),
                })
            }
            (true, Some(eps)) if !positive(eps) => {
                return Err(ConfigError::invalid(
                    "reweight_factor",
                    format!("must be a positive finite number, got {eps}"),
                ));
            }
            (false, Some(_)) => {
                return Err(ConfigError::InapplicableKey {
                    key: "reweight_factor",
                    context: context(),
                })
            }
            _ => {}
        }
        Ok(())
    }

    /// Step-scaled attractor strength `gamma`: `mu * rho` for ZA kinds,
    /// `mu * rho / eps` for RZA kinds, zero for kinds without a penalty.
    ///
    /// Assumes the params validate; missing keys count as zero.
    pub fn attractor_strength(&self) -> T {
        if !self.kind.uses_reg_param() {
            return T::zero();
        }
        let rho = self.reg_param.unwrap_or_else(T::zero);
        if self.kind.uses_reweight_factor() {
            let eps = self.reweight_factor.unwrap_or_else(T::one);
            self.step_size * rho / eps
        } else {
            self.step_size * rho
        }
    }
}

/// The adaptive estimate: a fixed-length weight vector plus the number of
/// accepted updates.
///
/// Weights are finite after every accepted step; a step that produces a
/// non-finite weight fails with [`Divergence`] and leaves the state
/// unusable, so it must be discarded.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterState<T> {
    weights: Vec<T>,
    iteration: u64,
}

impl<T: Scalar> FilterState<T> {
    /// Zero-initialized estimator with `n_taps` weights.
    pub fn zeros(n_taps: usize) -> Self {
        Self {
            weights: vec![T::zero(); n_taps],
            iteration: 0,
        }
    }

    /// Starts from explicit weights (iteration count 0).
    pub fn from_weights(weights: Vec<T>) -> Self {
        Self {
            weights,
            iteration: 0,
        }
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn n_taps(&self) -> usize {
        self.weights.len()
    }

    /// Number of accepted updates so far.
    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    /// Filter output `h^T x` for the current window.
    pub fn predict(&self, window: &RegressorWindow<T>) -> Result<T, ConfigError> {
        let samples = window.samples();
        if samples.len() != self.weights.len() {
            return Err(ConfigError::DimensionMismatch {
                expected: self.weights.len(),
                actual: samples.len(),
            });
        }
        Ok(crate::scalar::dot(&self.weights, samples))
    }
}

/// Per-step bookkeeping: the prediction, the a-priori error and its square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord<T> {
    pub prediction: T,
    pub error: T,
    pub squared_error: T,
}

/// A-priori error record for observation `y` and prediction `h^T x`:
/// `error = y - prediction`, `squared_error = error * error` (same rounding,
/// so the identity holds bit-exactly).
pub fn compute_error<T: Scalar>(observation: T, prediction: T) -> StepRecord<T> {
    let error = observation - prediction;
    StepRecord {
        prediction,
        error,
        squared_error: error * error,
    }
}

/// Componentwise sign with `sgn(0) = 0`.
///
/// The comparison is strict: any nonzero value, however small, is signed.
/// There is no dead-zone, since one would silently weaken the attractor.
pub fn sign_vector<T: Scalar>(v: &[T]) -> Vec<i8> {
    v.iter()
        .map(|&x| {
            if x > T::zero() {
                1
            } else if x < T::zero() {
                -1
            } else {
                0
            }
        })
        .collect()
}

fn sign_of<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else if x < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

/// Variable gain `e^2 / (e^2 + lambda)` that scales an LMS/F step relative
/// to a plain LMS step. Lies in `[0, 1)` and increases with `e^2`, so the
/// effective step size shrinks as the filter converges.
pub fn variable_step_gain<T: Scalar>(squared_error: T, threshold: T) -> T {
    squared_error / (squared_error + threshold)
}

fn expect_kind<T: Scalar>(
    params: &AlgorithmParams<T>,
    want: AlgorithmKind,
) -> Result<(), ConfigError> {
    if params.kind == want {
        Ok(())
    } else {
        Err(ConfigError::invalid(
            "kind",
            format!("expected `{want}`, got `{}`", params.kind),
        ))
    }
}

/// Advances the filter by one sample: predict, compute the error, apply the
/// update rule selected by `params.kind`, and increment the iteration count.
///
/// All seven kinds run through this single entry point so that a Monte
/// Carlo harness can stay algorithm-agnostic; the per-kind wrappers such as
/// [`lmsf_step`] delegate here after checking the kind.
///
/// Fails with a configuration error on a window-length mismatch or invalid
/// params, and with [`StepError::Diverged`] if the update would produce a
/// non-finite weight. A diverged step is not accepted: the error names the
/// iteration at which it happened and the state must be discarded.
pub fn step<T: Scalar>(
    state: &mut FilterState<T>,
    window: &RegressorWindow<T>,
    observation: T,
    params: &AlgorithmParams<T>,
) -> Result<StepRecord<T>, StepError> {
    params.validate()?;
    let prediction = state.predict(window)?;
    let record = compute_error(observation, prediction);
    let diverged = || Divergence {
        kind: params.kind,
        iteration: state.iteration,
    };
    if !record.squared_error.is_finite() {
        return Err(diverged().into());
    }

    let e = record.error;
    let mu = params.step_size;
    // Scalar factor of the error-driven term: the update is `h += gain * x`.
    let gain = match params.kind {
        AlgorithmKind::Lms | AlgorithmKind::ZaLms | AlgorithmKind::RzaLms => mu * e,
        AlgorithmKind::Lmf => mu * e * e * e,
        AlgorithmKind::Lmsf | AlgorithmKind::ZaLmsf | AlgorithmKind::RzaLmsf => {
            let lambda = params.threshold.expect("validated");
            mu * e * e * e / (record.squared_error + lambda)
        }
    };

    let gamma = params.attractor_strength();
    let samples = window.samples();
    if gamma > T::zero() {
        if params.kind.uses_reweight_factor() {
            let eps = params.reweight_factor.expect("validated");
            for (w, &x) in state.weights.iter_mut().zip(samples) {
                let prev = *w;
                *w = prev + gain * x - gamma * sign_of(prev) / (T::one() + eps * prev.abs());
            }
        } else {
            for (w, &x) in state.weights.iter_mut().zip(samples) {
                let prev = *w;
                *w = prev + gain * x - gamma * sign_of(prev);
            }
        }
    } else {
        // gamma == 0 skips the attractor entirely, which keeps penalty-off
        // sparse kinds bit-identical to their plain counterparts.
        for (w, &x) in state.weights.iter_mut().zip(samples) {
            *w += gain * x;
        }
    }

    if !state.weights.iter().all(|w| w.is_finite()) {
        return Err(diverged().into());
    }
    state.iteration += 1;
    Ok(record)
}

macro_rules! kind_step {
    ($(#[$doc:meta])* $name:ident, $kind:expr) => {
        $(#[$doc])*
        pub fn $name<T: Scalar>(
            state: &mut FilterState<T>,
            window: &RegressorWindow<T>,
            observation: T,
            params: &AlgorithmParams<T>,
        ) -> Result<StepRecord<T>, StepError> {
            expect_kind(params, $kind)?;
            step(state, window, observation, params)
        }
    };
}

kind_step!(
    /// Standard LMS update `h += mu * e * x`.
    lms_step,
    AlgorithmKind::Lms
);
kind_step!(
    /// LMF update `h += mu * e^3 * x`. Included as the large-`lambda`
    /// limit of LMS/F; prone to divergence when the error is large.
    lmf_step,
    AlgorithmKind::Lmf
);
kind_step!(
    /// LMS/F update `h += mu * e^3 * x / (e^2 + lambda)`.
    lmsf_step,
    AlgorithmKind::Lmsf
);
kind_step!(
    /// Zero-attracting LMS baseline: LMS plus `-gamma * sgn(h)`.
    za_lms_step,
    AlgorithmKind::ZaLms
);
kind_step!(
    /// Reweighted zero-attracting LMS baseline: LMS plus
    /// `-gamma * sgn(h) / (1 + eps * |h|)`.
    rza_lms_step,
    AlgorithmKind::RzaLms
);
kind_step!(
    /// Zero-attracting LMS/F: the LMS/F error term plus `-gamma * sgn(h)`.
    za_lmsf_step,
    AlgorithmKind::ZaLmsf
);
kind_step!(
    /// Reweighted zero-attracting LMS/F: the LMS/F error term plus
    /// `-gamma * sgn(h) / (1 + eps * |h|)`.
    rza_lmsf_step,
    AlgorithmKind::RzaLmsf
);

/// LMS/F cost `e^2 / 2 - (lambda / 2) * ln(e^2 + lambda)`.
///
/// Its gradient-descent direction in the weights is exactly the LMS/F error
/// term `e^3 * x / (e^2 + lambda)`.
pub fn cost_lmsf<T: Scalar>(error: T, threshold: T) -> T {
    let half = lit::<T>(0.5);
    let e2 = error * error;
    half * e2 - half * threshold * (e2 + threshold).ln()
}

/// ZA cost: [`cost_lmsf`] plus the l1 penalty `rho * ||h||_1`.
pub fn cost_za<T: Scalar>(error: T, threshold: T, reg_param: T, weights: &[T]) -> T {
    let l1 = weights.iter().fold(T::zero(), |acc, &w| acc + w.abs());
    cost_lmsf(error, threshold) + reg_param * l1
}

/// RZA cost: [`cost_lmsf`] plus the reweighted-log penalty
/// `(rho / eps^2) * sum_i ln(1 + eps * |h_i|)`.
///
/// The penalty is normalized so that its step-scaled gradient equals the
/// RZA attractor `(mu * rho / eps) * sgn(h_i) / (1 + eps * |h_i|)`.
pub fn cost_rza<T: Scalar>(
    error: T,
    threshold: T,
    reg_param: T,
    reweight_factor: T,
    weights: &[T],
) -> T {
    let eps = reweight_factor;
    let penalty = weights
        .iter()
        .fold(T::zero(), |acc, &w| acc + (T::one() + eps * w.abs()).ln());
    cost_lmsf(error, threshold) + reg_param / (eps * eps) * penalty
}
