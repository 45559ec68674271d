//! Scaling experiments over random problem instances: for a range of system
//! sizes, draw random coupling-ratio matrices, run the decomposition, and
//! aggregate total analog time, its trace bound, and block counts.
//!
//! Reproducibility contract: each (size, sample) pair gets its own
//! deterministic sub-seed derived from the master seed, so results are
//! independent of sample ordering and identical across runs and platforms.

use alloc::string::String;
use alloc::vec::Vec;

use core::fmt;
use core::fmt::Write as _;

use crate::coupling::{gauge_fix_psd, random_coupling_ratio_matrix, RandomMatrixError};
use crate::decompose::{decompose, DecomposeDriverError};
use crate::rng::derive_subseed;
use crate::spectral::SpectralError;

/// Aggregated statistics for one system size.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    /// System size this row aggregates.
    pub n_qubits: usize,
    /// Number of random instances drawn.
    pub samples: usize,
    /// Mean total analog time over the samples.
    pub mean_ta: f64,
    /// Smallest total analog time seen.
    pub min_ta: f64,
    /// Largest total analog time seen.
    pub max_ta: f64,
    /// Mean of the per-sample bound `3N·|λ̃_min|` (the trace of the
    /// gauge-fixed matrix).
    pub mean_bound: f64,
    /// Mean number of schedule blocks (4 per retained decomposition term
    /// would double-count: one term = one block).
    pub mean_blocks: f64,
}

/// Errors from the scaling experiment driver.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentError {
    /// Size range must satisfy `2 ≤ n_min ≤ n_max`.
    InvalidRange { n_min: usize, n_max: usize },
    /// At least one sample per size is required.
    InvalidSamples,
    /// The size stride must be positive.
    InvalidStep,
    /// Random instance generation failed (degenerate draws exhausted the
    /// retry budget).
    Random(RandomMatrixError),
    /// Eigendecomposition failed during gauge fixing.
    Spectral(SpectralError),
    /// The decomposition stage failed.
    Decompose(DecomposeDriverError),
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::InvalidRange { n_min, n_max } => {
                write!(
                    f,
                    "size range must satisfy 2 <= n_min <= n_max, got {n_min}..={n_max}"
                )
            }
            ExperimentError::InvalidSamples => write!(f, "samples per size must be at least 1"),
            ExperimentError::InvalidStep => write!(f, "size stride must be at least 1"),
            ExperimentError::Random(e) => write!(f, "random instance generation failed: {e}"),
            ExperimentError::Spectral(e) => write!(f, "gauge fixing failed: {e}"),
            ExperimentError::Decompose(e) => write!(f, "decomposition failed: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ExperimentError {}

impl From<RandomMatrixError> for ExperimentError {
    fn from(e: RandomMatrixError) -> Self {
        ExperimentError::Random(e)
    }
}

impl From<SpectralError> for ExperimentError {
    fn from(e: SpectralError) -> Self {
        ExperimentError::Spectral(e)
    }
}

impl From<DecomposeDriverError> for ExperimentError {
    fn from(e: DecomposeDriverError) -> Self {
        ExperimentError::Decompose(e)
    }
}

/// Runs the scaling experiment over sizes `n_min, n_min+n_step, … ≤ n_max`
/// with `samples_per_n` random instances per size.
///
/// Per sample: a random symmetric coupling-ratio matrix (entries uniform in
/// [−1, 1), normalized so the largest magnitude is 1), gauge-fixed to be
/// positive semidefinite, then decomposed with the given discard threshold.
pub fn run_scaling_experiment(
    n_min: usize,
    n_max: usize,
    n_step: usize,
    samples_per_n: usize,
    seed: u64,
    discard_threshold: f64,
) -> Result<Vec<ScalingRow>, ExperimentError> {
    if n_min < 2 || n_min > n_max {
        return Err(ExperimentError::InvalidRange { n_min, n_max });
    }
    if samples_per_n == 0 {
        return Err(ExperimentError::InvalidSamples);
    }
    if n_step == 0 {
        return Err(ExperimentError::InvalidStep);
    }

    let mut rows = Vec::new();
    let mut n = n_min;
    while n <= n_max {
        let mut sum_ta = 0.0;
        let mut min_ta = f64::INFINITY;
        let mut max_ta = f64::NEG_INFINITY;
        let mut sum_bound = 0.0;
        let mut sum_blocks = 0.0;
        for sample in 0..samples_per_n {
            let subseed = derive_subseed(seed, n as u64, sample as u64);
            let matrix = random_coupling_ratio_matrix(n, subseed)?;
            let fixed = gauge_fix_psd(matrix)?;
            let shift = fixed
                .lambda_tilde_min()
                .expect("gauge fixing records the spectral shift");
            let decomposition = decompose(&fixed, discard_threshold)?;
            let ta = decomposition.total_analog_time();
            sum_ta += ta;
            min_ta = min_ta.min(ta);
            max_ta = max_ta.max(ta);
            sum_bound += 3.0 * n as f64 * shift.abs();
            sum_blocks += decomposition.terms().len() as f64;
        }
        let count = samples_per_n as f64;
        rows.push(ScalingRow {
            n_qubits: n,
            samples: samples_per_n,
            mean_ta: sum_ta / count,
            min_ta,
            max_ta,
            mean_bound: sum_bound / count,
            mean_blocks: sum_blocks / count,
        });
        n += n_step;
    }
    Ok(rows)
}

/// Renders rows as CSV with a fixed header and 10-significant-digit
/// scientific notation, LF line endings; byte-identical for identical rows.
pub fn scaling_rows_to_csv(rows: &[ScalingRow]) -> String {
    let mut out = String::from("n,samples,mean_ta,min_ta,max_ta,mean_bound,mean_blocks\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e}",
            row.n_qubits,
            row.samples,
            row.mean_ta,
            row.min_ta,
            row.max_ta,
            row.mean_bound,
            row.mean_blocks
        );
    }
    out
}
