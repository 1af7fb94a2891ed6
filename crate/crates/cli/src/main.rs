//! `wearsim`: wearout lifetimes, acceleration factors and reliability Trojan
//! scenarios from the command line.

mod commands;
mod config;
mod error;
mod format;
mod params;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::{CliError, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "wearsim",
    version,
    about = "CMOS wearout lifetimes and reliability Trojan simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lifetime of one device at one operating point
    Mttf(commands::MttfArgs),
    /// Acceleration factor between a use and a stress condition
    Accel(commands::AccelArgs),
    /// Nominal vs Trojan-shifted population simulation
    Scenario(commands::ScenarioArgs),
    /// Raw per-device parameter and lifetime draws as CSV
    Sample(commands::SampleArgs),
    /// Weibull maximum-likelihood fit of failure times from CSV
    Fit(commands::FitArgs),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("WEARSIM_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "WEARSIM_THREADS must be a positive integer (got `{raw}`)"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Mttf(a) => commands::mttf(a),
        Command::Accel(a) => commands::accel(a),
        Command::Scenario(a) => commands::scenario(a),
        Command::Sample(a) => commands::sample(a),
        Command::Fit(a) => commands::fit(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
