use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fracmhd::diagnostics::classify_region;
use fracmhd::harness::{run, sweep, verify, RunConfig, RunStatus, SweepSpec, VerifyOptions};
use fracmhd::Error;

const EXIT_IO: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NON_FINITE: u8 = 3;
const EXIT_RESOLUTION: u8 = 4;
const EXIT_VERIFY: u8 = 5;

/// Pseudospectral solver for 2D MHD with fractional dissipation.
#[derive(Parser)]
#[command(name = "fracmhd", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation described by a JSON configuration.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a parameter sweep over (alpha, beta).
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the built-in property suite.
    Verify {
        /// Only properties whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Classify (alpha, beta) against the known regularity conditions.
    Region {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        json: bool,
    },
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::ConfigInvalid(_) | Error::Json(_) => EXIT_CONFIG,
        Error::NonFinite { .. } => EXIT_NON_FINITE,
        Error::ResolutionLoss { .. } => EXIT_RESOLUTION,
        _ => EXIT_IO,
    }
}

fn status_code(status: RunStatus) -> u8 {
    match status {
        RunStatus::Completed => 0,
        RunStatus::NonFinite => EXIT_NON_FINITE,
        RunStatus::ResolutionLoss => EXIT_RESOLUTION,
    }
}

fn execute(command: Command) -> Result<u8, Error> {
    match command {
        Command::Run { config } => {
            let config = RunConfig::from_path(&config).map_err(|e| match e {
                Error::Io(io) => Error::ConfigInvalid(format!("cannot read {}: {io}", config.display())),
                other => other,
            })?;
            let summary = run(&config)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            eprintln!(
                "{}: t = {} after {} steps in {:.2} s",
                summary.status, summary.t_final, summary.steps, summary.wall_clock_seconds
            );
            Ok(status_code(summary.status))
        }
        Command::Sweep { config } => {
            let spec = SweepSpec::from_path(&config).map_err(|e| match e {
                Error::Io(io) => Error::ConfigInvalid(format!("cannot read {}: {io}", config.display())),
                other => other,
            })?;
            let report = sweep(&spec)?;
            report.write_csv(std::io::stdout().lock())?;
            Ok(0)
        }
        Command::Verify { filter, json } => {
            let report = verify(&VerifyOptions {
                filter,
                ..Default::default()
            });
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{report}");
            }
            Ok(if report.passed() { 0 } else { EXIT_VERIFY })
        }
        Command::Region { alpha, beta, json } => {
            let verdict = classify_region(alpha, beta);
            if json {
                let doc = serde_json::json!({
                    "alpha": alpha,
                    "beta": beta,
                    "region": verdict.region,
                    "detail": verdict.detail,
                });
                println!("{doc}");
            } else {
                println!("{} ({})", verdict.region, verdict.detail);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
