//! Ground-truth signal model: sparse FIR channels, white Gaussian training
//! excitation, AWGN observations `y(n) = h^T x(n) + z(n)`, and the squared
//! deviation metric used for learning curves.
//!
//! Every generator takes an explicit `&mut impl Rng`, so callers own the
//! random streams and independent trials can run concurrently on
//! independent generators. Gaussian draws are made in `f64` and converted,
//! which makes realizations identical for every scalar type.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::algorithms::FilterState;
use crate::error::ConfigError;
use crate::scalar::{dot, lit, Scalar};

fn standard_normal<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    let z: f64 = rng.sample(StandardNormal);
    lit(z)
}

/// A unit-energy FIR channel with exactly `sparsity` nonzero taps.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseChannel<T> {
    taps: Vec<T>,
    support: Vec<usize>,
}

impl<T: Scalar> SparseChannel<T> {
    /// Draws a random sparse channel: `sparsity` support positions chosen
    /// uniformly without replacement, nonzero taps i.i.d. standard Gaussian,
    /// and the whole vector scaled to unit l2 norm.
    pub fn generate<R: Rng + ?Sized>(
        n_taps: usize,
        sparsity: usize,
        rng: &mut R,
    ) -> Result<Self, ConfigError> {
        if n_taps == 0 {
            return Err(ConfigError::invalid("n_taps", "must be at least 1"));
        }
        if sparsity < 1 || sparsity > n_taps {
            return Err(ConfigError::invalid(
                "sparsity",
                format!("out of range: need 1 <= sparsity <= n_taps, got {sparsity} with n_taps {n_taps}"),
            ));
        }
        let mut support = rand::seq::index::sample(rng, n_taps, sparsity).into_vec();
        support.sort_unstable();
        let mut taps = vec![T::zero(); n_taps];
        loop {
            // every support tap is redrawn on each pass, so a retry is a
            // clean redraw of the whole realization
            for &i in &support {
                taps[i] = standard_normal(rng);
            }
            let norm = dot(&taps, &taps).sqrt();
            if norm > T::zero() {
                for t in &mut taps {
                    *t /= norm;
                }
                // a tap this far below the norm scale rounds to zero and
                // would break the exact-sparsity invariant; retry
                if support.iter().all(|&i| taps[i] != T::zero()) {
                    break;
                }
            }
        }
        Ok(Self { taps, support })
    }

    /// Builds a channel from explicit taps; support is inferred from the
    /// nonzero positions. Intended for tests and deterministic setups; the
    /// caller is responsible for unit energy if the MSD convention matters.
    pub fn from_taps(taps: Vec<T>) -> Result<Self, ConfigError> {
        if taps.is_empty() {
            return Err(ConfigError::invalid("n_taps", "must be at least 1"));
        }
        let support: Vec<usize> = taps
            .iter()
            .enumerate()
            .filter(|(_, t)| **t != T::zero())
            .map(|(i, _)| i)
            .collect();
        if support.is_empty() {
            return Err(ConfigError::invalid("sparsity", "all taps are zero"));
        }
        Ok(Self { taps, support })
    }

    pub fn taps(&self) -> &[T] {
        &self.taps
    }

    /// Indices of the nonzero taps, in ascending order.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn n_taps(&self) -> usize {
        self.taps.len()
    }

    pub fn sparsity(&self) -> usize {
        self.support.len()
    }
}

/// Sliding window over the most recent `len` training samples, newest
/// first: `[x(n), x(n-1), ..., x(n-N+1)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressorWindow<T> {
    samples: Vec<T>,
}

impl<T: Scalar> RegressorWindow<T> {
    /// All-zero window; fills gradually over the first `len` pushes.
    pub fn zeros(len: usize) -> Self {
        Self {
            samples: vec![T::zero(); len],
        }
    }

    pub fn from_samples(samples: Vec<T>) -> Self {
        Self { samples }
    }

    /// Shifts every sample one slot older and installs `sample` as newest,
    /// dropping the oldest: `push([a, b, c], d) == [d, a, b]`.
    pub fn push(&mut self, sample: T) {
        self.samples.rotate_right(1);
        self.samples[0] = sample;
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Additive white Gaussian observation noise of a given variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel<T> {
    variance: T,
}

impl<T: Scalar> NoiseModel<T> {
    pub fn new(variance: T) -> Result<Self, ConfigError> {
        if !(variance.is_finite() && variance >= T::zero()) {
            return Err(ConfigError::invalid(
                "noise_variance",
                format!("must be a nonnegative finite number, got {variance}"),
            ));
        }
        Ok(Self { variance })
    }

    /// Noise level for a given receive SNR under unit transmission power.
    pub fn from_snr_db(snr_db: T) -> Self {
        Self {
            variance: snr_to_noise_variance(snr_db),
        }
    }

    pub fn variance(&self) -> T {
        self.variance
    }

    /// One noise draw `z ~ N(0, variance)`. Always consumes exactly one
    /// Gaussian sample from `rng`, even at zero variance, so substreams
    /// stay aligned across noise levels.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let z: T = standard_normal(rng);
        self.variance.sqrt() * z
    }
}

/// Noise variance `10^(-snr_db / 10)` for unit signal power.
pub fn snr_to_noise_variance<T: Scalar>(snr_db: T) -> T {
    lit::<T>(10.0).powf(-snr_db / lit::<T>(10.0))
}

/// One white-Gaussian training sample (zero mean, unit variance).
pub fn next_training_sample<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    standard_normal(rng)
}

/// Synthesizes an observation `y = h^T x + z` with fresh noise from `rng`.
pub fn observe<T: Scalar, R: Rng + ?Sized>(
    channel: &SparseChannel<T>,
    window: &RegressorWindow<T>,
    noise: &NoiseModel<T>,
    rng: &mut R,
) -> Result<T, ConfigError> {
    if window.len() != channel.n_taps() {
        return Err(ConfigError::DimensionMismatch {
            expected: channel.n_taps(),
            actual: window.len(),
        });
    }
    Ok(dot(channel.taps(), window.samples()) + noise.sample(rng))
}

/// Squared estimation deviation `||h - h_hat||_2^2`.
pub fn squared_deviation<T: Scalar>(
    truth: &SparseChannel<T>,
    estimate: &FilterState<T>,
) -> Result<T, ConfigError> {
    if truth.n_taps() != estimate.n_taps() {
        return Err(ConfigError::DimensionMismatch {
            expected: truth.n_taps(),
            actual: estimate.n_taps(),
        });
    }
    Ok(truth
        .taps()
        .iter()
        .zip(estimate.weights())
        .fold(T::zero(), |acc, (&h, &w)| {
            let d = h - w;
            acc + d * d
        }))
}
