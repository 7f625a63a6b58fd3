//! Seeded Monte Carlo harness: paired trials, averaged learning curves,
//! steady-state summaries and hyperparameter grid sweeps.
//!
//! # Reproducibility contract
//!
//! Every random quantity in trial `i` of a run with master seed `s` comes
//! from one of three ChaCha8 substreams selected by [`trial_rng`]`(s, i, _)`:
//! channel realization, training excitation, and observation noise. The
//! substreams depend only on `(s, i)`, never on the algorithm, the sweep
//! grid point, thread scheduling, or how many other trials run. Two
//! consequences the rest of the crate relies on:
//!
//! - **Paired trials.** Trial `i` sees the identical channel, excitation
//!   and noise realization for every algorithm and every grid value, so
//!   comparisons cancel most Monte Carlo variance.
//! - **Parallel determinism.** Trials may execute concurrently in any
//!   order; curves are collected and reduced in trial-index order, so every
//!   result is bit-identical regardless of thread count.
//!
//! Within a trial, iteration `n` consumes exactly one excitation draw and
//! one noise draw, in that order, and the channel substream is consumed
//! only during channel generation.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algorithms::{step, AlgorithmKind, AlgorithmParams, FilterState};
use crate::config::{substitute_parameter, ExperimentConfig, SweepParameter};
use crate::error::{ConfigError, StepError};
use crate::scalar::{lit, Scalar};
use crate::signal::{
    next_training_sample, observe, squared_deviation, NoiseModel, RegressorWindow, SparseChannel,
};

/// The three independent random substreams of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubStream {
    Channel = 0,
    Excitation = 1,
    Noise = 2,
}

/// Deterministic per-trial generator: ChaCha8 keyed by the master seed,
/// on stream `trial_index * 4 + substream`.
///
/// This mapping is part of the public reproducibility contract. Adding
/// algorithms, grid points or trials never perturbs existing realizations.
pub fn trial_rng(master_seed: u64, trial_index: u64, stream: SubStream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index.wrapping_mul(4) + stream as u64);
    rng
}

/// Squared-deviation sequence of one trial, or the elementwise mean of many.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningCurve<T> {
    values: Vec<T>,
}

impl<T: Scalar> LearningCurve<T> {
    /// Wraps raw per-iteration values. Values produced by the harness are
    /// always finite and nonnegative.
    pub fn new(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Elementwise mean over equally long curves, accumulated in the order
    /// given. `None` for an empty slice.
    pub fn mean_of(curves: &[LearningCurve<T>]) -> Option<LearningCurve<T>> {
        let first = curves.first()?;
        let mut sums = vec![T::zero(); first.len()];
        for curve in curves {
            for (s, &v) in sums.iter_mut().zip(curve.values()) {
                *s += v;
            }
        }
        let count = T::from_usize(curves.len()).expect("curve count fits scalar");
        Some(LearningCurve::new(
            sums.into_iter().map(|s| s / count).collect(),
        ))
    }

    /// Mean of the final `window` entries: the steady-state MSD estimate.
    pub fn steady_state_msd(&self, window: usize) -> Result<T, ConfigError> {
        if window < 1 || window > self.values.len() {
            return Err(ConfigError::invalid(
                "steady_window",
                format!(
                    "must satisfy 1 <= window <= {} (curve length), got {window}",
                    self.values.len()
                ),
            ));
        }
        let tail = &self.values[self.values.len() - window..];
        let sum = tail.iter().fold(T::zero(), |acc, &v| acc + v);
        Ok(sum / T::from_usize(window).expect("window fits scalar"))
    }
}

/// Converts a linear power ratio to decibels, `10 * log10(x)`.
pub fn to_db<T: Scalar>(x: T) -> T {
    lit::<T>(10.0) * x.log10()
}

/// One diverged trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialDivergence {
    pub trial_index: usize,
    /// Iteration within the trial at which the update went non-finite.
    pub iteration: u64,
}

/// Everything that diverged for one algorithm across a Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceReport<T> {
    pub kind: AlgorithmKind,
    /// Grid value being evaluated when the divergence happened, if the run
    /// was part of a sweep.
    pub grid_value: Option<T>,
    /// Diverged trials in ascending trial order.
    pub trials: Vec<TrialDivergence>,
}

impl<T: Scalar> std::fmt::Display for DivergenceReport<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} diverged in {} trial(s)",
            self.kind,
            self.trials.len()
        )?;
        if let Some(v) = self.grid_value {
            write!(f, " at grid value {v}")?;
        }
        let mut shown = self.trials.iter().take(8).peekable();
        if shown.peek().is_some() {
            write!(f, ": ")?;
            let listed: Vec<String> = shown
                .map(|t| format!("trial {} (iteration {})", t.trial_index, t.iteration))
                .collect();
            write!(f, "{}", listed.join(", "))?;
            if self.trials.len() > 8 {
                write!(f, ", ...")?;
            }
        }
        Ok(())
    }
}

/// Error from a single trial.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrialError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{kind} diverged in trial {trial_index} at iteration {iteration}")]
    Diverged {
        kind: AlgorithmKind,
        trial_index: usize,
        iteration: u64,
    },
}

/// Error from a Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError<T: Scalar> {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Divergence(DivergenceReport<T>),
}

/// Runs a single trial of `params` under the scenario in `config` and
/// records the squared deviation after every update.
///
/// The filter starts from the all-zeros vector, so with a unit-energy
/// channel the pre-update deviation is exactly 1. All randomness derives
/// from `(config.seed, trial_index)`; the configured algorithm list plays
/// no part, which is what makes trials paired across algorithms.
pub fn run_trial<T: Scalar>(
    config: &ExperimentConfig<T>,
    params: &AlgorithmParams<T>,
    trial_index: usize,
) -> Result<LearningCurve<T>, TrialError> {
    if trial_index >= config.trials {
        return Err(ConfigError::invalid(
            "trial_index",
            format!(
                "must be below trials = {}, got {trial_index}",
                config.trials
            ),
        )
        .into());
    }
    let mut channel_rng = trial_rng(config.seed, trial_index as u64, SubStream::Channel);
    let mut excitation_rng = trial_rng(config.seed, trial_index as u64, SubStream::Excitation);
    let mut noise_rng = trial_rng(config.seed, trial_index as u64, SubStream::Noise);

    let channel = SparseChannel::generate(config.n_taps, config.sparsity, &mut channel_rng)?;
    let noise = NoiseModel::from_snr_db(config.snr_db);
    let mut window = RegressorWindow::zeros(config.n_taps);
    let mut state = FilterState::zeros(config.n_taps);

    let diverged = |iteration: u64| TrialError::Diverged {
        kind: params.kind,
        trial_index,
        iteration,
    };

    let mut values = Vec::with_capacity(config.iterations);
    for _ in 0..config.iterations {
        window.push(next_training_sample(&mut excitation_rng));
        let y = observe(&channel, &window, &noise, &mut noise_rng)?;
        match step(&mut state, &window, y, params) {
            Ok(_) => {}
            Err(StepError::Diverged(d)) => return Err(diverged(d.iteration)),
            Err(StepError::Config(e)) => return Err(e.into()),
        }
        let sd = squared_deviation(&channel, &state)?;
        // weights can stay finite while their squared deviation overflows;
        // treat that as divergence too so curves stay finite
        if !sd.is_finite() {
            return Err(diverged(state.iteration().saturating_sub(1)));
        }
        values.push(sd);
    }
    Ok(LearningCurve::new(values))
}

/// Runs all `config.trials` trials of one algorithm, in parallel, and
/// returns the per-trial curves in trial order.
///
/// If any trial diverges the whole run fails with a report listing every
/// diverged trial.
pub fn run_trials<T: Scalar>(
    config: &ExperimentConfig<T>,
    params: &AlgorithmParams<T>,
) -> Result<Vec<LearningCurve<T>>, ExperimentError<T>> {
    config.validate_scenario()?;
    params.validate()?;
    let results: Vec<Result<LearningCurve<T>, TrialError>> = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config, params, i))
        .collect();

    let mut curves = Vec::with_capacity(results.len());
    let mut diverged = Vec::new();
    for result in results {
        match result {
            Ok(curve) => curves.push(curve),
            Err(TrialError::Diverged {
                trial_index,
                iteration,
                ..
            }) => diverged.push(TrialDivergence {
                trial_index,
                iteration,
            }),
            Err(TrialError::Config(e)) => return Err(e.into()),
        }
    }
    if diverged.is_empty() {
        Ok(curves)
    } else {
        Err(ExperimentError::Divergence(DivergenceReport {
            kind: params.kind,
            grid_value: None,
            trials: diverged,
        }))
    }
}

/// Elementwise mean over all trials: the Monte Carlo estimate of the MSD
/// learning curve. Deterministic for a fixed `config.seed` regardless of
/// execution order or parallelism.
pub fn monte_carlo_average<T: Scalar>(
    config: &ExperimentConfig<T>,
    params: &AlgorithmParams<T>,
) -> Result<LearningCurve<T>, ExperimentError<T>> {
    let curves = run_trials(config, params)?;
    Ok(LearningCurve::mean_of(&curves).expect("trials >= 1"))
}

/// Result of one algorithm inside [`compare_algorithms`].
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledOutcome<T> {
    pub label: String,
    pub kind: AlgorithmKind,
    pub outcome: Result<LearningCurve<T>, DivergenceReport<T>>,
}

/// Runs every configured algorithm over identical paired trials and
/// returns one averaged curve per algorithm, in config order.
///
/// A divergence in one algorithm is reported in its own outcome and does
/// not abort the others.
pub fn compare_algorithms<T: Scalar>(
    config: &ExperimentConfig<T>,
) -> Result<Vec<LabeledOutcome<T>>, ConfigError> {
    config.validate()?;
    let mut outcomes = Vec::with_capacity(config.algorithms.len());
    for entry in &config.algorithms {
        let outcome = match monte_carlo_average(config, &entry.params()) {
            Ok(curve) => Ok(curve),
            Err(ExperimentError::Divergence(report)) => Err(report),
            Err(ExperimentError::Config(e)) => return Err(e),
        };
        outcomes.push(LabeledOutcome {
            label: entry.label.clone(),
            kind: entry.kind,
            outcome,
        });
    }
    Ok(outcomes)
}

/// Steady-state MSD per grid point plus the selected minimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult<T> {
    pub parameter: SweepParameter,
    pub grid: Vec<T>,
    pub steady_state_msd: Vec<T>,
    /// Index of the grid point with the lowest steady-state MSD. Ties break
    /// toward the smaller parameter value.
    pub best_index: usize,
}

impl<T: Scalar> SweepResult<T> {
    pub fn best_value(&self) -> T {
        self.grid[self.best_index]
    }

    pub fn best_msd(&self) -> T {
        self.steady_state_msd[self.best_index]
    }
}

/// Sweeps one hyperparameter of `params` over `grid`, running a full Monte
/// Carlo average per grid point with identical seeds (so grid points are
/// paired), and summarizes each point by its steady-state MSD.
pub fn sweep_parameter<T: Scalar>(
    config: &ExperimentConfig<T>,
    params: &AlgorithmParams<T>,
    parameter: SweepParameter,
    grid: &[T],
) -> Result<SweepResult<T>, ExperimentError<T>> {
    if grid.is_empty() {
        return Err(ConfigError::invalid("sweep.grid", "must not be empty").into());
    }
    let window = config.steady_window_len();
    let mut msds = Vec::with_capacity(grid.len());
    for &value in grid {
        let substituted =
            substitute_parameter(params, parameter, value).map_err(ExperimentError::Config)?;
        substituted.validate()?;
        let curve = monte_carlo_average(config, &substituted).map_err(|e| match e {
            ExperimentError::Divergence(mut report) => {
                report.grid_value = Some(value);
                ExperimentError::Divergence(report)
            }
            other => other,
        })?;
        msds.push(curve.steady_state_msd(window)?);
    }

    let mut best_index = 0;
    for i in 1..grid.len() {
        let better = msds[i] < msds[best_index]
            || (msds[i] == msds[best_index] && grid[i] < grid[best_index]);
        if better {
            best_index = i;
        }
    }
    Ok(SweepResult {
        parameter,
        grid: grid.to_vec(),
        steady_state_msd: msds,
        best_index,
    })
}

/// Runs the sweep block of a config against its referenced algorithm.
pub fn run_config_sweep<T: Scalar>(
    config: &ExperimentConfig<T>,
) -> Result<SweepResult<T>, ExperimentError<T>> {
    config.validate()?;
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| ConfigError::invalid("sweep", "config contains no sweep block"))?;
    let entry = config
        .algorithm(&sweep.algorithm_label)
        .ok_or_else(|| ConfigError::UnknownLabel(sweep.algorithm_label.clone()))?;
    sweep_parameter(config, &entry.params(), sweep.parameter, &sweep.grid)
}
