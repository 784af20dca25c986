use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use irs_mobility::scenario::{load_config, pass_summary, run_sweep, snapshot_report, write_csv, ScenarioConfig};

/// Simulate an IRS-assisted ground-to-LEO link over one satellite pass.
#[derive(Debug, Parser)]
#[command(name = "irs-sim", version)]
struct Cli {
    /// Worker threads, 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the time sweep and write the CSV.
    Simulate {
        /// JSON scenario; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the visibility window and the maximum elevation.
    PassWindow {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print per-variant gains and spreads at one instant.
    Snapshot {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
}

fn config(path: &Option<PathBuf>) -> anyhow::Result<ScenarioConfig> {
    match path {
        Some(p) => load_config(p).with_context(|| format!("loading {}", p.display())),
        None => Ok(ScenarioConfig::default()),
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global()?;
    match cli.command {
        Command::Simulate { config: path, out } => {
            let cfg = config(&path)?;
            let result = run_sweep(&cfg)?;
            write_csv(&result, &out)?;
            eprintln!("wrote {} records to {}", result.records.len(), out.display());
        }
        Command::PassWindow { config: path } => {
            let pass = pass_summary(&config(&path)?)?;
            println!("t_start_s {:.3}", pass.t_start_s);
            println!("t_end_s {:.3}", pass.t_end_s);
            println!("max_elevation_deg {:.4} at t={:.3} s", pass.max_elevation_deg, pass.t_max_s);
        }
        Command::Snapshot { config: path, t } => {
            let cfg = config(&path)?;
            let rec = snapshot_report(&cfg, t)?;
            println!("t={t} s elevation={:.4} deg", rec.elevation_deg);
            println!(
                "{:<16} {:>12} {:>12} {:>14} {:>12} {:>14}",
                "variant", "gain_db", "irs_gain_db", "delay_spread_s", "periods", "doppler_hz"
            );
            for (v, m) in cfg.variants.iter().zip(&rec.variants) {
                println!(
                    "{:<16} {:>12.4} {:>12.4} {:>14.6e} {:>12.1} {:>14.6e}",
                    v.name,
                    m.channel_gain_db,
                    m.irs_gain_db,
                    m.delay_spread_s,
                    m.delay_spread_periods,
                    m.doppler_spread_hz
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
