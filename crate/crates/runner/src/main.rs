// SPDX-License-Identifier: Apache-2.0

mod config;
mod run;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use config::GateDistribution;
use corrperf::gate::MomentMode;
use run::RunError;

#[derive(Parser)]
#[command(
    name = "corrperf",
    version,
    about = "Code performance under correlated spin-bath noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run {
        config: PathBuf,
        /// Override a scalar field, e.g. `--set bath.spins=196`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Cross-check the sector, dense and chi routes on small models.
    Validate {
        #[arg(long, default_value_t = corrperf::validation::VALIDATION_POINTS)]
        points: usize,
    },
    /// Local versus global control fidelity over a sweep of noise scales.
    FaultyGate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "gaussian")]
        distribution: DistributionArg,
        /// Rotation strength `τ_r g`.
        #[arg(long, default_value_t = 1.0)]
        rotation: f64,
        #[arg(long, default_value_t = 0.0)]
        scale_start: f64,
        #[arg(long, default_value_t = 3.0)]
        scale_stop: f64,
        #[arg(long, default_value_t = 64)]
        points: usize,
        #[arg(long, default_value_t = 0.0)]
        mean: f64,
        /// Use `cos²` moments instead of `cos`.
        #[arg(long)]
        squared: bool,
        #[arg(long, short)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum DistributionArg {
    Gaussian,
    Uniform,
}

fn execute(cli: Cli) -> Result<(), RunError> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Run { config, overrides } => {
            let config = config::load(&config, &overrides).map_err(RunError::Config)?;
            run::run(&config, &mut out)
        }
        Command::Validate { points } => {
            if points == 0 {
                return Err(RunError::Config("points must be positive".into()));
            }
            run::run_validation(points, &mut out)
        }
        Command::FaultyGate {
            n,
            distribution,
            rotation,
            scale_start,
            scale_stop,
            points,
            mean,
            squared,
            output,
        } => {
            let distribution = match distribution {
                DistributionArg::Gaussian => GateDistribution::Gaussian,
                DistributionArg::Uniform => GateDistribution::Uniform,
            };
            let mode = if squared {
                MomentMode::Squared
            } else {
                MomentMode::AsPrinted
            };
            let doc = json!({
                "experiment": "faulty-gate",
                "output": output,
                "gate": {
                    "n": n,
                    "rotation": rotation,
                    "distribution": distribution,
                    "scales": {"start": scale_start, "stop": scale_stop, "points": points},
                    "mean": mean,
                    "mode": mode,
                }
            });
            let config = config::resolve(doc, &[]).map_err(RunError::Config)?;
            run::run(&config, &mut out)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("corrperf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
