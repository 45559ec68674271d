//! `daqc` — compile two-body Hamiltonian simulation problems into
//! digital-analog schedules, verify them against exact evolution, and run
//! scaling experiments.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "daqc",
    version,
    about = "Compile, verify, and benchmark digital-analog schedules \
             for two-body Hamiltonian simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a problem Hamiltonian against a ZZ source into a schedule file
    Compile {
        /// Problem Hamiltonian JSON file
        #[arg(long)]
        problem: PathBuf,
        /// Source (ZZ-only) Hamiltonian JSON file
        #[arg(long)]
        source: PathBuf,
        /// Total simulated evolution time (must be positive)
        #[arg(long)]
        time: f64,
        /// Relative eigenvalue weight below which contributions are dropped
        #[arg(long, default_value_t = 0.0)]
        threshold: f64,
        /// Output path for the schedule JSON
        #[arg(long)]
        out: PathBuf,
    },
    /// Measure a schedule against exact evolution at several Trotter step counts
    Verify {
        /// Schedule JSON file produced by `compile`
        #[arg(long)]
        schedule: PathBuf,
        /// Problem Hamiltonian JSON file the schedule approximates
        #[arg(long)]
        problem: PathBuf,
        /// Comma-separated, strictly increasing Trotter step counts
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16")]
        steps: Vec<u32>,
    },
    /// Run the analog-time scaling experiment over random problems
    Experiment {
        /// Smallest system size (at least 2)
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        /// Largest system size
        #[arg(long, default_value_t = 50)]
        n_max: usize,
        /// Increment between consecutive system sizes
        #[arg(long, default_value_t = 4)]
        n_step: usize,
        /// Random problem instances per system size
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Master seed; every sample derives its own sub-seed from it
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative eigenvalue weight below which contributions are dropped
        #[arg(long, default_value_t = 0.0)]
        threshold: f64,
        /// Output path for the CSV
        #[arg(long, default_value = "scaling.csv")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    // Route all argument mistakes through exit code 1 so that code 2 stays
    // reserved for internal failures; help and version remain exit 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => daqc_cli::EXIT_INPUT,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };

    let code = match cli.command {
        Command::Compile {
            problem,
            source,
            time,
            threshold,
            out,
        } => daqc_cli::run_compile(&problem, &source, time, threshold, &out),
        Command::Verify {
            schedule,
            problem,
            steps,
        } => daqc_cli::run_verify(&schedule, &problem, &steps),
        Command::Experiment {
            n_min,
            n_max,
            n_step,
            samples,
            seed,
            threshold,
            out,
        } => daqc_cli::run_experiment(n_min, n_max, n_step, samples, seed, threshold, &out),
    };
    ExitCode::from(code as u8)
}
