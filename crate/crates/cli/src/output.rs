//! CSV and manifest writers.
//!
//! All floats are written with Rust's shortest round-trip formatting, so a
//! parsed value recovers the exact double. Files are written atomically:
//! content goes to a sibling `*.tmp` file which is renamed into place.

use std::fs;
use std::io;
use std::path::Path;

use asce::experiment::{to_db, DivergenceReport, LearningCurve, SweepResult};
use asce::ExperimentConfig;
use serde::{Deserialize, Serialize};

/// Snapshot of one run: enough to reproduce every CSV byte-for-byte by
/// re-running with the embedded config (which includes the effective seed).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub master_seed: u64,
    pub config: ExperimentConfig<f64>,
    pub started_unix_ms: u64,
    pub finished_unix_ms: u64,
    /// File names written into the output directory, in write order.
    pub outputs: Vec<String>,
    /// One entry per algorithm (or sweep target) that diverged.
    pub divergence: Vec<DivergenceEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivergenceEntry {
    pub label: String,
    pub report: DivergenceReport<f64>,
}

pub fn unix_ms() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// Writes `bytes` to `path` via a temporary sibling and rename.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

fn format_value(v: f64) -> String {
    format!("{v}")
}

/// Writes a learning-curve CSV: an `iteration` column followed by one MSD
/// column per labeled curve. With `db` set, values are `10 log10(msd)`.
pub fn write_curves_csv(
    path: &Path,
    curves: &[(&str, &LearningCurve<f64>)],
    db: bool,
) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["iteration".to_string()];
    header.extend(curves.iter().map(|(label, _)| label.to_string()));
    writer.write_record(&header)?;

    let rows = curves.first().map_or(0, |(_, c)| c.len());
    for i in 0..rows {
        let mut row = vec![i.to_string()];
        for (_, curve) in curves {
            let v = curve.values()[i];
            row.push(format_value(if db { to_db(v) } else { v }));
        }
        writer.write_record(&row)?;
    }
    let bytes = writer.into_inner().map_err(io::Error::other)?;
    atomic_write(path, &bytes)
}

/// Writes a sweep CSV with columns `<parameter>`, `steady_state_msd`, and
/// `steady_state_msd_db`.
pub fn write_sweep_csv(path: &Path, result: &SweepResult<f64>) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record([
        result.parameter.key(),
        "steady_state_msd",
        "steady_state_msd_db",
    ])?;
    for (value, msd) in result.grid.iter().zip(&result.steady_state_msd) {
        writer.write_record([
            format_value(*value),
            format_value(*msd),
            format_value(to_db(*msd)),
        ])?;
    }
    let bytes = writer.into_inner().map_err(io::Error::other)?;
    atomic_write(path, &bytes)
}

pub fn write_manifest(path: &Path, manifest: &RunManifest) -> io::Result<()> {
    let mut bytes = serde_json::to_vec_pretty(manifest)?;
    bytes.push(b'\n');
    atomic_write(path, &bytes)
}
