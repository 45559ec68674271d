//! Command implementations for the `daqc` binary.
//!
//! Each `run_*` function does the work of one subcommand and returns a
//! process exit code. Machine-readable output (schedule JSON, report JSON,
//! CSV) goes to files or standard output; all diagnostics go to standard
//! error.
//!
//! Exit codes, uniform across subcommands:
//! - 0: success
//! - 1: bad input — unreadable or malformed files, incompatible problem and
//!   source Hamiltonians, invalid argument combinations
//! - 2: operational failure — a numerical routine did not converge, a size
//!   guard rejected the request, or an output file could not be written
//! - 3: (`verify` only) the report was produced but no requested step count
//!   reached the convergence threshold

pub mod format;

use daqc_core::{
    compile_schedule_with_shift, run_scaling_experiment, scaling_rows_to_csv, trotter_report,
    CompileError, ExperimentError, ScalingRow, VerifyError,
};
use std::fs;
use std::path::Path;

/// A verify run whose smallest distance is at or below this value counts as
/// converged (exit 0); anything larger exits 3.
pub const CONVERGENCE_THRESHOLD: f64 = 0.1;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for unreadable, malformed, or incompatible inputs.
pub const EXIT_INPUT: i32 = 1;
/// Exit code for numerical failures, size guards, and output IO errors.
pub const EXIT_INTERNAL: i32 = 2;
/// Exit code for a verify run that did not reach the convergence threshold.
pub const EXIT_NOT_CONVERGED: i32 = 3;

fn read_input(path: &Path, what: &str) -> Result<String, i32> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {what} file {}: {e}", path.display());
        EXIT_INPUT
    })
}

fn parse_input<T>(
    text: &str,
    path: &Path,
    what: &str,
    parse: impl FnOnce(&str) -> Result<T, format::FormatError>,
) -> Result<T, i32> {
    parse(text).map_err(|e| {
        eprintln!("error: invalid {what} file {}: {e}", path.display());
        EXIT_INPUT
    })
}

/// Compiles a problem Hamiltonian against a source Hamiltonian into a
/// schedule file, printing a summary to standard output.
pub fn run_compile(
    problem_path: &Path,
    source_path: &Path,
    sim_time: f64,
    threshold: f64,
    out_path: &Path,
) -> i32 {
    if !sim_time.is_finite() || sim_time <= 0.0 {
        eprintln!("error: --time must be a finite positive number (got {sim_time})");
        return EXIT_INPUT;
    }
    if !threshold.is_finite() || threshold < 0.0 {
        eprintln!("error: --threshold must be finite and non-negative (got {threshold})");
        return EXIT_INPUT;
    }
    let (problem, source) = match (|| {
        let problem_text = read_input(problem_path, "problem")?;
        let source_text = read_input(source_path, "source")?;
        let problem = parse_input(
            &problem_text,
            problem_path,
            "problem",
            format::parse_hamiltonian,
        )?;
        let source = parse_input(
            &source_text,
            source_path,
            "source",
            format::parse_hamiltonian,
        )?;
        Ok::<_, i32>((problem, source))
    })() {
        Ok(pair) => pair,
        Err(code) => return code,
    };

    let (schedule, shift) =
        match compile_schedule_with_shift(&problem, &source, sim_time, threshold) {
            Ok(result) => result,
            Err(CompileError::Hamiltonian(e)) => {
                // Compatibility problems (topology, sizes, non-ZZ source) are
                // input errors; the message already names the offending pair.
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
            Err(e) => {
                eprintln!("error: compilation failed: {e}");
                return EXIT_INTERNAL;
            }
        };

    if schedule.blocks.is_empty() && schedule.discarded_weight > 0.0 {
        eprintln!(
            "warning: discard threshold {threshold} removed every eigenvalue contribution; \
             the schedule is empty"
        );
    }

    let json = match format::to_json(&format::schedule_to_file(&schedule)) {
        Ok(json) => json,
        Err(e) => {
            eprintln!("error: cannot serialize schedule: {e}");
            return EXIT_INTERNAL;
        }
    };
    if let Err(e) = fs::write(out_path, &json) {
        eprintln!("error: cannot write {}: {e}", out_path.display());
        return EXIT_INTERNAL;
    }

    println!("qubits:           {}", schedule.n_qubits);
    println!("blocks:           {}", schedule.blocks.len());
    println!("analog time:      {:.6e}", schedule.total_analog_time());
    println!("discarded weight: {:.6e}", schedule.discarded_weight);
    // Smallest eigenvalue of the coupling-ratio matrix before the
    // positive-semidefinite shift; the analog-time bound is 3N times its
    // magnitude.
    println!("min eigenvalue:   {:.6e}", shift);
    println!("schedule written to {}", out_path.display());
    EXIT_OK
}

/// Verifies a schedule file against a problem file, printing a report as
/// JSON on standard output.
pub fn run_verify(schedule_path: &Path, problem_path: &Path, steps: &[u32]) -> i32 {
    let (schedule, problem) = match (|| {
        let schedule_text = read_input(schedule_path, "schedule")?;
        let problem_text = read_input(problem_path, "problem")?;
        let schedule = parse_input(
            &schedule_text,
            schedule_path,
            "schedule",
            format::parse_schedule,
        )?;
        let problem = parse_input(
            &problem_text,
            problem_path,
            "problem",
            format::parse_hamiltonian,
        )?;
        Ok::<_, i32>((schedule, problem))
    })() {
        Ok(pair) => pair,
        Err(code) => return code,
    };

    let report = match trotter_report(&schedule, &problem, steps) {
        Ok(report) => report,
        Err(e @ VerifyError::TooLarge { .. }) | Err(e @ VerifyError::DimensionMismatch { .. }) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
        Err(e @ VerifyError::InvalidSteps) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
        Err(e) => {
            eprintln!("error: verification failed: {e}");
            return EXIT_INTERNAL;
        }
    };

    let json = match format::to_json(&format::report_to_file(&report)) {
        Ok(json) => json,
        Err(e) => {
            eprintln!("error: cannot serialize report: {e}");
            return EXIT_INTERNAL;
        }
    };
    print!("{json}");

    let best = report
        .distances
        .iter()
        .map(|&(_, d)| d)
        .fold(f64::INFINITY, f64::min);
    if best <= CONVERGENCE_THRESHOLD {
        EXIT_OK
    } else {
        eprintln!(
            "not converged: smallest distance {best:.3e} exceeds {CONVERGENCE_THRESHOLD} \
             at the requested step counts"
        );
        EXIT_NOT_CONVERGED
    }
}

/// Runs the scaling experiment over a range of system sizes and writes the
/// aggregate rows as CSV. Progress goes to standard error.
#[allow(clippy::too_many_arguments)]
pub fn run_experiment(
    n_min: usize,
    n_max: usize,
    n_step: usize,
    samples: usize,
    seed: u64,
    threshold: f64,
    out_path: &Path,
) -> i32 {
    if n_min > n_max {
        eprintln!("error: --n-min ({n_min}) must not exceed --n-max ({n_max})");
        eprintln!("usage: daqc experiment --n-min A --n-max B [--n-step S] [--samples K] [--seed N] [--out FILE]");
        return EXIT_INPUT;
    }
    if n_step == 0 {
        eprintln!("error: --n-step must be positive");
        return EXIT_INPUT;
    }
    if !threshold.is_finite() || threshold < 0.0 {
        eprintln!("error: --threshold must be finite and non-negative (got {threshold})");
        return EXIT_INPUT;
    }

    // One core call per size: sample sub-seeds depend only on
    // (seed, size, sample index), so slicing the range this way yields the
    // same rows as a single ranged call while allowing per-size progress.
    let mut rows: Vec<ScalingRow> = Vec::new();
    let mut n = n_min;
    while n <= n_max {
        match run_scaling_experiment(n, n, 1, samples, seed, threshold) {
            Ok(mut row) => {
                eprintln!("n={n}: {samples} samples done");
                rows.append(&mut row);
            }
            Err(
                e @ (ExperimentError::InvalidRange { .. }
                | ExperimentError::InvalidSamples
                | ExperimentError::InvalidStep),
            ) => {
                eprintln!("error: {e}");
                eprintln!("usage: daqc experiment --n-min A --n-max B [--n-step S] [--samples K] [--seed N] [--out FILE]");
                return EXIT_INPUT;
            }
            Err(e) => {
                eprintln!("error: experiment failed at n={n}: {e}");
                return EXIT_INTERNAL;
            }
        }
        match n.checked_add(n_step) {
            Some(next) => n = next,
            None => break,
        }
    }

    match emit_csv(&rows, out_path) {
        Ok(()) => {
            eprintln!("wrote {} rows to {}", rows.len(), out_path.display());
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", out_path.display());
            EXIT_INTERNAL
        }
    }
}

/// Writes scaling rows as CSV (header plus one line per row, LF endings).
pub fn emit_csv(rows: &[ScalingRow], path: &Path) -> std::io::Result<()> {
    if rows.is_empty() {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "no rows to write",
        ));
    }
    fs::write(path, scaling_rows_to_csv(rows))
}
