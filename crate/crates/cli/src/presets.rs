//! Named experiment presets covering the standard comparison and sweep
//! setups: a 16-tap unit-energy channel probed at 10 dB SNR, with the
//! hyperparameter sets used throughout the test suite.

use asce::{AlgorithmEntry, AlgorithmParams, ExperimentConfig, SweepConfig, SweepParameter};

/// All preset names accepted by `asce presets <name>`.
pub const PRESET_NAMES: [&str; 6] = [
    "table2-k2",
    "table2-k4",
    "fig5-sweep",
    "fig6-sweep",
    "fig9-sweep",
    "sec3c-alt",
];

fn scenario(sparsity: usize) -> ExperimentConfig<f64> {
    ExperimentConfig {
        n_taps: 16,
        sparsity,
        snr_db: 10.0,
        iterations: 1000,
        trials: 1000,
        seed: 1,
        algorithms: Vec::new(),
        sweep: None,
        steady_window: None,
    }
}

/// The seven-algorithm comparison: LMS and LMF baselines, LMS/F, and the
/// sparse ZA/RZA variants of each family, all at step size `mu`.
fn comparison_algorithms(
    mu: f64,
    lambda: f64,
    rho_za: f64,
    rho_rza: f64,
    rho_zas: f64,
    rho_rzas: f64,
    eps: f64,
) -> Vec<AlgorithmEntry<f64>> {
    vec![
        AlgorithmEntry::new("lms", AlgorithmParams::lms(mu)),
        AlgorithmEntry::new("lmf", AlgorithmParams::lmf(mu)),
        AlgorithmEntry::new("lmsf", AlgorithmParams::lmsf(mu, lambda)),
        AlgorithmEntry::new("za-lms", AlgorithmParams::za_lms(mu, rho_zas)),
        AlgorithmEntry::new("rza-lms", AlgorithmParams::rza_lms(mu, rho_rzas, eps)),
        AlgorithmEntry::new("za-lmsf", AlgorithmParams::za_lmsf(mu, lambda, rho_za)),
        AlgorithmEntry::new(
            "rza-lmsf",
            AlgorithmParams::rza_lmsf(mu, lambda, rho_rza, eps),
        ),
    ]
}

/// Builds a preset config by name.
pub fn preset(name: &str) -> Option<ExperimentConfig<f64>> {
    let config = match name {
        // K = 2 comparison at the standard parameter block
        "table2-k2" => {
            let mut c = scenario(2);
            c.algorithms = comparison_algorithms(0.04, 0.8, 0.0004, 0.04, 0.008, 0.8, 20.0);
            c
        }
        // K = 4 comparison; sparsity penalties halved
        "table2-k4" => {
            let mut c = scenario(4);
            c.algorithms = comparison_algorithms(0.04, 0.8, 0.0002, 0.02, 0.004, 0.4, 20.0);
            c
        }
        // ZA-LMS/F regularization sweep over a half-decade log grid
        "fig5-sweep" => {
            let mut c = scenario(2);
            c.algorithms = vec![AlgorithmEntry::new(
                "za-lmsf",
                AlgorithmParams::za_lmsf(0.05, 0.8, 0.0004),
            )];
            c.sweep = Some(SweepConfig {
                algorithm_label: "za-lmsf".to_string(),
                parameter: SweepParameter::RegParam,
                grid: vec![1e-5, 3.1623e-5, 1e-4, 3.1623e-4, 1e-3, 3.1623e-3, 1e-2],
            });
            c
        }
        // RZA-LMS/F regularization sweep
        "fig6-sweep" => {
            let mut c = scenario(2);
            c.algorithms = vec![AlgorithmEntry::new(
                "rza-lmsf",
                AlgorithmParams::rza_lmsf(0.05, 0.8, 0.02, 20.0),
            )];
            c.sweep = Some(SweepConfig {
                algorithm_label: "rza-lmsf".to_string(),
                parameter: SweepParameter::RegParam,
                grid: vec![1e-3, 3.1623e-3, 1e-2, 3.1623e-2, 1e-1, 3.1623e-1, 1.0],
            });
            c
        }
        // RZA-LMS/F reweighting-factor sweep
        "fig9-sweep" => {
            let mut c = scenario(2);
            c.algorithms = vec![AlgorithmEntry::new(
                "rza-lmsf",
                AlgorithmParams::rza_lmsf(0.04, 0.8, 0.04, 20.0),
            )];
            c.sweep = Some(SweepConfig {
                algorithm_label: "rza-lmsf".to_string(),
                parameter: SweepParameter::ReweightFactor,
                grid: vec![1.0, 2.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 40.0, 50.0],
            });
            c
        }
        // alternate K = 2 comparison with the smaller RZA-LMS/F penalty
        "sec3c-alt" => {
            let mut c = scenario(2);
            c.algorithms = comparison_algorithms(0.04, 0.8, 0.0004, 0.02, 0.008, 0.8, 20.0);
            c
        }
        _ => return None,
    };
    debug_assert!(config.validate().is_ok());
    Some(config)
}
