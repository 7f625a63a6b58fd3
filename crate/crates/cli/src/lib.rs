//! Command implementations behind the `asce` binary.
//!
//! Three subcommands: `compare` runs every configured algorithm over paired
//! Monte Carlo trials and writes averaged MSD learning curves; `sweep` runs
//! a hyperparameter grid and writes steady-state summaries; `presets`
//! prints a ready-made config. Outputs are deterministic for a fixed config
//! and seed regardless of thread count.

pub mod output;
pub mod presets;

use std::fs;
use std::path::Path;

use asce::experiment::{compare_algorithms, run_config_sweep, to_db, ExperimentError};
use asce::{ConfigError, ExperimentConfig};
use thiserror::Error;

use output::{
    unix_ms, write_curves_csv, write_manifest, write_sweep_csv, DivergenceEntry, RunManifest,
};

/// Top-level CLI failure. Exit codes partition the causes: 2 for config
/// errors, 3 for numerical divergence, 4 for I/O errors.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("divergence: {}", summarize(.0))]
    Divergence(Vec<DivergenceEntry>),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

fn summarize(entries: &[DivergenceEntry]) -> String {
    entries
        .iter()
        .map(|e| format!("{} ({})", e.label, e.report))
        .collect::<Vec<_>>()
        .join("; ")
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Divergence(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    fn io(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Io { context, source }
    }
}

/// Reads and strictly validates a JSON experiment config.
pub fn load_config(path: &Path) -> Result<ExperimentConfig<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(CliError::io(format!("reading config {}", path.display())))?;
    Ok(ExperimentConfig::from_json_str(&text)?)
}

fn manifest_skeleton(config: &ExperimentConfig<f64>, started_unix_ms: u64) -> RunManifest {
    RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        master_seed: config.seed,
        config: config.clone(),
        started_unix_ms,
        finished_unix_ms: 0,
        outputs: Vec::new(),
        divergence: Vec::new(),
    }
}

/// Runs the comparison described by the config and writes `curves.csv`
/// (linear MSD per algorithm), `curves_db.csv` (the same curves in dB) and
/// `manifest.json` into `out_dir`.
///
/// Algorithms that diverge are dropped from the CSVs, reported in the
/// manifest, and turned into a [`CliError::Divergence`] after all outputs
/// are written.
pub fn cmd_compare(
    config_path: &Path,
    out_dir: &Path,
    seed_override: Option<u64>,
) -> Result<(), CliError> {
    let mut config = load_config(config_path)?;
    if let Some(seed) = seed_override {
        config.seed = seed;
    }
    fs::create_dir_all(out_dir).map_err(CliError::io(format!("creating {}", out_dir.display())))?;

    let started = unix_ms();
    let outcomes = compare_algorithms(&config)?;

    let mut curves = Vec::new();
    let mut divergence = Vec::new();
    for outcome in &outcomes {
        match &outcome.outcome {
            Ok(curve) => curves.push((outcome.label.as_str(), curve)),
            Err(report) => divergence.push(DivergenceEntry {
                label: outcome.label.clone(),
                report: report.clone(),
            }),
        }
    }

    let curves_path = out_dir.join("curves.csv");
    write_curves_csv(&curves_path, &curves, false).map_err(CliError::io("writing curves.csv"))?;
    let db_path = out_dir.join("curves_db.csv");
    write_curves_csv(&db_path, &curves, true).map_err(CliError::io("writing curves_db.csv"))?;

    let window = config.steady_window_len();
    for (label, curve) in &curves {
        let steady = curve
            .steady_state_msd(window)
            .expect("window validated against iterations");
        println!(
            "{label}: steady-state MSD {steady:.6e} ({:.2} dB)",
            to_db(steady)
        );
    }
    for entry in &divergence {
        println!("{}: DIVERGED ({})", entry.label, entry.report);
    }

    let mut manifest = manifest_skeleton(&config, started);
    manifest.outputs = vec!["curves.csv".to_string(), "curves_db.csv".to_string()];
    manifest.divergence = divergence.clone();
    manifest.finished_unix_ms = unix_ms();
    write_manifest(&out_dir.join("manifest.json"), &manifest)
        .map_err(CliError::io("writing manifest.json"))?;

    if divergence.is_empty() {
        Ok(())
    } else {
        Err(CliError::Divergence(divergence))
    }
}

/// Runs the sweep block of the config and writes `sweep.csv` plus
/// `manifest.json` into `out_dir`, printing the selected best value.
pub fn cmd_sweep(
    config_path: &Path,
    out_dir: &Path,
    seed_override: Option<u64>,
) -> Result<(), CliError> {
    let mut config = load_config(config_path)?;
    if let Some(seed) = seed_override {
        config.seed = seed;
    }
    let sweep = config
        .sweep
        .clone()
        .ok_or_else(|| ConfigError::invalid("sweep", "config contains no sweep block"))?;
    fs::create_dir_all(out_dir).map_err(CliError::io(format!("creating {}", out_dir.display())))?;

    let started = unix_ms();
    let mut manifest = manifest_skeleton(&config, started);

    match run_config_sweep(&config) {
        Ok(result) => {
            let sweep_path = out_dir.join("sweep.csv");
            write_sweep_csv(&sweep_path, &result).map_err(CliError::io("writing sweep.csv"))?;
            println!(
                "best {} = {} (steady-state MSD {:.6e} = {:.2} dB)",
                result.parameter.key(),
                result.best_value(),
                result.best_msd(),
                to_db(result.best_msd()),
            );
            manifest.outputs = vec!["sweep.csv".to_string()];
            manifest.finished_unix_ms = unix_ms();
            write_manifest(&out_dir.join("manifest.json"), &manifest)
                .map_err(CliError::io("writing manifest.json"))?;
            Ok(())
        }
        Err(ExperimentError::Config(e)) => Err(e.into()),
        Err(ExperimentError::Divergence(report)) => {
            let entry = DivergenceEntry {
                label: sweep.algorithm_label.clone(),
                report,
            };
            println!("{}: DIVERGED ({})", entry.label, entry.report);
            manifest.divergence = vec![entry.clone()];
            manifest.finished_unix_ms = unix_ms();
            write_manifest(&out_dir.join("manifest.json"), &manifest)
                .map_err(CliError::io("writing manifest.json"))?;
            Err(CliError::Divergence(vec![entry]))
        }
    }
}

/// Renders the named preset as a JSON config document.
pub fn cmd_presets(name: &str) -> Result<String, CliError> {
    let config = presets::preset(name).ok_or_else(|| {
        ConfigError::invalid(
            "preset",
            format!(
                "unknown preset `{name}`; available: {}",
                presets::PRESET_NAMES.join(", ")
            ),
        )
    })?;
    Ok(serde_json::to_string_pretty(&config).expect("presets serialize"))
}
