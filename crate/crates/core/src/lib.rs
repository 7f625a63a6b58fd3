//! Adaptive sparse channel estimation with the LMS/F filter family.
//!
//! This crate estimates a sparse FIR channel online from a streaming
//! training signal. It provides:
//!
//! - [`algorithms`]: the LMS, LMF and LMS/F stochastic-gradient filters
//!   plus their zero-attracting (ZA) and reweighted zero-attracting (RZA)
//!   variants, all driven through one uniform [`algorithms::step`] entry
//!   point, together with the cost functions each update descends.
//! - [`signal`]: the ground-truth model: unit-energy sparse channels,
//!   white Gaussian excitation, AWGN observations and the squared-deviation
//!   metric.
//! - [`experiment`]: a seeded, paired-trial Monte Carlo harness producing
//!   averaged mean-square-deviation learning curves, steady-state summaries
//!   and hyperparameter sweeps. Results are bit-reproducible for a fixed
//!   seed regardless of thread count.
//! - [`config`]: strict JSON experiment configuration.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the `*32` /
//! `*64` aliases below pin the common instantiations.
//!
//! ```
//! use asce::experiment::monte_carlo_average;
//! use asce::{AlgorithmEntry, AlgorithmParams, ExperimentConfig};
//!
//! let params = AlgorithmParams::rza_lmsf(0.04, 0.8, 0.04, 20.0);
//! let config = ExperimentConfig::<f64> {
//!     n_taps: 16,
//!     sparsity: 2,
//!     snr_db: 10.0,
//!     iterations: 200,
//!     trials: 20,
//!     seed: 7,
//!     algorithms: vec![AlgorithmEntry::new("rza-lmsf", params)],
//!     sweep: None,
//!     steady_window: None,
//! };
//! let curve = monte_carlo_average(&config, &params)?;
//! let steady = curve.steady_state_msd(config.steady_window_len())?;
//! assert!(steady < 1.0); // converged well below the initial deviation
//! # Ok::<(), asce::experiment::ExperimentError<f64>>(())
//! ```

pub mod algorithms;
pub mod config;
pub mod error;
pub mod experiment;
pub mod scalar;
pub mod signal;

pub use crate::algorithms::{AlgorithmKind, AlgorithmParams, FilterState, StepRecord};
pub use crate::config::{AlgorithmEntry, ExperimentConfig, SweepConfig, SweepParameter};
pub use crate::error::{ConfigError, Divergence, StepError};
pub use crate::experiment::{
    DivergenceReport, ExperimentError, LabeledOutcome, LearningCurve, SweepResult, TrialError,
};
pub use crate::scalar::Scalar;
pub use crate::signal::{NoiseModel, RegressorWindow, SparseChannel};

pub type FilterState32 = FilterState<f32>;
pub type FilterState64 = FilterState<f64>;
pub type AlgorithmParams32 = AlgorithmParams<f32>;
pub type AlgorithmParams64 = AlgorithmParams<f64>;
pub type SparseChannel32 = SparseChannel<f32>;
pub type SparseChannel64 = SparseChannel<f64>;
pub type RegressorWindow32 = RegressorWindow<f32>;
pub type RegressorWindow64 = RegressorWindow<f64>;
pub type LearningCurve32 = LearningCurve<f32>;
pub type LearningCurve64 = LearningCurve<f64>;
pub type ExperimentConfig32 = ExperimentConfig<f32>;
pub type ExperimentConfig64 = ExperimentConfig<f64>;
pub type SweepResult32 = SweepResult<f32>;
pub type SweepResult64 = SweepResult<f64>;

#[cfg(test)]
mod tests {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn domain_types_are_plain_values() {
        // states and results move freely between threads
        assert_send_sync::<crate::FilterState64>();
        assert_send_sync::<crate::FilterState32>();
        assert_send_sync::<crate::SparseChannel64>();
        assert_send_sync::<crate::RegressorWindow64>();
        assert_send_sync::<crate::LearningCurve64>();
        assert_send_sync::<crate::ExperimentConfig64>();
        assert_send_sync::<crate::AlgorithmParams64>();
        assert_send_sync::<crate::SweepResult64>();
    }
}
