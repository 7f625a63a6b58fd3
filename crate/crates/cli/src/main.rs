use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use asce_cli::{cmd_compare, cmd_presets, cmd_sweep};

/// Sparse-channel adaptive filtering experiments: paired Monte Carlo
/// comparisons of the LMS/F family and its zero-attracting variants.
#[derive(Parser)]
#[command(name = "asce", version, about)]
struct Cli {
    /// Worker threads for trial execution (default: all cores). Results do
    /// not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Overrides the master seed from the config.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every configured algorithm over paired trials and write
    /// averaged MSD learning curves (curves.csv, curves_db.csv).
    Compare {
        /// JSON experiment config.
        config: PathBuf,
        /// Output directory for curves.csv, curves_db.csv, manifest.json.
        #[arg(short = 'o', long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Run the config's hyperparameter sweep and write sweep.csv.
    Sweep {
        /// JSON experiment config containing a `sweep` block.
        config: PathBuf,
        /// Output directory for sweep.csv and manifest.json.
        #[arg(short = 'o', long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Print a named preset config as JSON.
    Presets {
        /// One of: table2-k2, table2-k4, fig5-sweep, fig6-sweep,
        /// fig9-sweep, sec3c-alt.
        name: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: building thread pool: {e}");
            return ExitCode::from(2);
        }
    }

    let result = match &cli.command {
        Command::Compare { config, out_dir } => cmd_compare(config, out_dir, cli.seed),
        Command::Sweep { config, out_dir } => cmd_sweep(config, out_dir, cli.seed),
        Command::Presets { name } => cmd_presets(name).map(|text| println!("{text}")),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
