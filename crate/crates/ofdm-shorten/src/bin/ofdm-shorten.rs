//! Thin command-line front end for the experiment presets.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use ofdm_shorten::experiment::{preset_names, run, ExperimentConfig};
use ofdm_shorten::Error;

/// Channel-shortening experiment runner: executes a named preset and emits
/// a self-describing CSV into the output directory.
///
/// Worker thread count is controlled by the RAYON_NUM_THREADS environment
/// variable (defaults to the number of CPUs).
#[derive(Parser)]
#[command(version, about, long_about = None)]
struct Args {
    /// Preset to run (fig1..fig8, one per shipped analysis/simulation plot).
    #[arg(long)]
    preset: Option<String>,

    /// Flat key=value config file; '#' starts a comment. May set preset,
    /// seed, full, and any preset setting (dotted keys).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Master seed for all stochastic presets (default 0 unless the config
    /// file sets one).
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory for the emitted CSV files.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Production-scale grids and trial counts instead of desk-scale defaults.
    #[arg(long)]
    full: bool,

    /// Override a single setting, e.g. --set grid.snr_op_db=25,30
    /// (repeatable; applied after --config).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

fn build_config(args: &Args) -> Result<ExperimentConfig, Error> {
    // --config may carry the preset; --preset wins if both are given.
    let mut file_text = None;
    if let Some(path) = &args.config {
        file_text = Some(std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidConfig(format!("cannot read config file {}: {e}", path.display()))
        })?);
    }
    let preset = match &args.preset {
        Some(p) => p.clone(),
        None => file_text
            .as_deref()
            .and_then(|t| {
                t.lines()
                    .filter_map(|l| l.split('#').next().unwrap_or("").trim().strip_prefix("preset="))
                    .next()
                    .map(|v| v.trim().to_string())
            })
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "no preset given; use --preset or a config file (available: {})",
                    preset_names().join(", ")
                ))
            })?,
    };
    let mut cfg = ExperimentConfig::new(&preset, &args.out)?;
    if let Some(text) = &file_text {
        cfg.merge_file_text(text)?;
    }
    cfg.preset = preset;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if args.full {
        cfg.full = true;
    }
    for pair in &args.sets {
        cfg.merge_pair(pair)?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match build_config(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(path) => {
            println!("wrote {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse(_) => 3,
                Error::Io(_) => 4,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
