//! `srlab` — run stochastic-resonance sweeps, cross-model studies and the
//! adaptive noise controller, writing plot-ready CSV.

mod commands;
mod config;
mod csvfmt;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "srlab", version, about = "Adaptive stochastic resonance experiments")]
struct Cli {
    /// Override every seed in the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel sweeps (0 = one per core).
    #[arg(long, global = true, env = "SRLAB_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// TOML experiment description.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; defaults to `[output] path` from the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep the noise intensity and record every objective.
    Sweep(ConfigArgs),
    /// Tabulate the closed-form predictions of the bipolar threshold model.
    Analytic(commands::AnalyticArgs),
    /// Compare MI-optimal and AC-optimal noise across the `[[study]]` configs.
    Scatter(ConfigArgs),
    /// Run the autocorrelation-driven noise controller.
    Adapt(ConfigArgs),
}

fn init_threads(threads: Option<usize>) -> Result<(), CliError> {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Runtime(e.into()))?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads(cli.threads)?;
    match cli.command {
        Command::Sweep(a) => commands::sweep(&a.config, a.out.as_deref(), cli.seed),
        Command::Analytic(a) => commands::analytic(&a),
        Command::Scatter(a) => commands::scatter(&a.config, a.out.as_deref(), cli.seed),
        Command::Adapt(a) => commands::adapt(&a.config, a.out.as_deref(), cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("srlab: {e:#}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
