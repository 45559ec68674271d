//! The coupling-ratio matrix: the 3N×3N symmetric encoding of "how much of
//! each source ZZ coupling the target evolution needs".
//!
//! Entry `(3i+μ, 3j+ν)` for `i ≠ j` holds `T·h_P^{μν}_{ij} / h_S^{zz}_{ij}`:
//! simulation time times the ratio of the problem coupling on axes `(μ, ν)`
//! to the source ZZ coupling on the same qubit pair. The 3×3 diagonal blocks
//! are pure gauge — they correspond to `σ^μ_i σ^ν_i` products that collapse
//! to single-qubit terms and the identity — and are chosen to make the matrix
//! positive semidefinite: every diagonal entry is set to `|λ̃_min|`, the
//! magnitude of the most negative eigenvalue of the zero-diagonal matrix.
//! Positive semidefiniteness is what lets the decomposition stage emit only
//! non-negative analog times.

use core::fmt;

use crate::hamiltonian::{validate_compatibility, HamiltonianError, PauliAxis, TwoBodyHamiltonian};
use crate::matrix::Matrix;
use crate::rng::UniformStream;
use crate::spectral::{min_eigenvalue, SpectralError};

/// Retry budget for all-zero random draws before reporting a degenerate
/// sample.
const RANDOM_RETRIES: usize = 8;

/// Symmetric 3N×3N coupling-ratio matrix with its gauge state.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingRatioMatrix {
    n_qubits: usize,
    entries: Matrix,
    sim_time: f64,
    /// Set by [`gauge_fix_psd`]: the (clamped, ≤ 0) minimum eigenvalue of the
    /// zero-diagonal matrix. `None` until gauge-fixed.
    lambda_tilde_min: Option<f64>,
}

impl CouplingRatioMatrix {
    /// Number of qubits N.
    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Matrix dimension 3N.
    #[inline]
    pub fn dim(&self) -> usize {
        3 * self.n_qubits
    }

    /// The dense entries.
    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// Simulation time T the off-diagonal entries were scaled by.
    #[inline]
    pub fn sim_time(&self) -> f64 {
        self.sim_time
    }

    /// Minimum eigenvalue of the zero-diagonal matrix (≤ 0), recorded by
    /// [`gauge_fix_psd`]; `None` before gauge fixing.
    #[inline]
    pub fn lambda_tilde_min(&self) -> Option<f64> {
        self.lambda_tilde_min
    }

    /// True once [`gauge_fix_psd`] has run.
    #[inline]
    pub fn is_gauge_fixed(&self) -> bool {
        self.lambda_tilde_min.is_some()
    }
}

/// Builds the zero-diagonal coupling-ratio matrix for `problem` against
/// `source` at simulation time `sim_time`.
///
/// Validates compatibility first; every problem coupling `(i, j, μ, ν)` lands
/// at `(3i+μ, 3j+ν)` and its mirror as `sim_time·h_P/h_S`. Pairs without
/// problem couplings stay zero. Diagonal 3×3 blocks stay zero pending
/// [`gauge_fix_psd`].
///
/// # Panics
/// If `sim_time` is not strictly positive and finite.
pub fn build_coupling_ratio_matrix(
    problem: &TwoBodyHamiltonian,
    source: &TwoBodyHamiltonian,
    sim_time: f64,
) -> Result<CouplingRatioMatrix, HamiltonianError> {
    assert!(
        sim_time.is_finite() && sim_time > 0.0,
        "simulation time must be positive and finite, got {sim_time}"
    );
    validate_compatibility(problem, source)?;
    let n = problem.n_qubits();
    let mut entries = Matrix::zeros(3 * n);
    for ((i, j, mu, nu), h_p) in problem.terms() {
        let h_s = source.coupling(i, j, PauliAxis::Z, PauliAxis::Z);
        // Nonzero by validate_compatibility.
        let ratio = sim_time * h_p / h_s;
        entries.set_sym(3 * i + mu.index(), 3 * j + nu.index(), ratio);
    }
    Ok(CouplingRatioMatrix {
        n_qubits: n,
        entries,
        sim_time,
        lambda_tilde_min: None,
    })
}

/// Shifts the diagonal to make the matrix positive semidefinite.
///
/// Computes `λ̃_min`, the minimum eigenvalue of the zero-diagonal matrix
/// (clamped to 0 if it computes positive, which happens only through
/// roundoff — a zero-diagonal symmetric matrix with any nonzero entry has a
/// negative eigenvalue), then sets all 3N diagonal entries to `|λ̃_min|`.
/// Off-diagonal entries of the 3×3 diagonal blocks remain zero.
pub fn gauge_fix_psd(matrix: CouplingRatioMatrix) -> Result<CouplingRatioMatrix, SpectralError> {
    let CouplingRatioMatrix {
        n_qubits,
        mut entries,
        sim_time,
        ..
    } = matrix;
    let lambda = min_eigenvalue(&entries)?.min(0.0);
    for d in 0..entries.n() {
        entries.set(d, d, -lambda);
    }
    Ok(CouplingRatioMatrix {
        n_qubits,
        entries,
        sim_time,
        lambda_tilde_min: Some(lambda),
    })
}

/// Errors from random matrix generation.
#[derive(Debug, Clone, PartialEq)]
pub enum RandomMatrixError {
    /// Every drawn entry was zero, `RANDOM_RETRIES` times in a row.
    Degenerate(HamiltonianError),
}

impl fmt::Display for RandomMatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RandomMatrixError::Degenerate(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RandomMatrixError {}

/// Draws a random zero-diagonal coupling-ratio matrix for the scaling
/// ensemble: every off-diagonal 3×3 block i.i.d. uniform on `[-1, 1)` for
/// `i < j` (mirrored), then all entries divided by the largest magnitude so
/// the elementwise maximum is exactly 1. `sim_time` is fixed at 1.
///
/// Draw order is fixed — pair `(0,1), (0,2), …, (1,2), …` and the 9 entries
/// of each block row-major — so outputs are a pure function of the seed. An
/// all-zero draw (possible only with astronomically small probability, but
/// handled for completeness) is retried on the same stream a fixed number of
/// times before failing.
pub fn random_coupling_ratio_matrix(
    n_qubits: usize,
    seed: u64,
) -> Result<CouplingRatioMatrix, RandomMatrixError> {
    assert!(n_qubits >= 2, "the random ensemble needs at least 2 qubits");
    let mut stream = UniformStream::from_seed(seed);
    for _ in 0..RANDOM_RETRIES {
        let mut entries = Matrix::zeros(3 * n_qubits);
        let mut max_abs = 0.0f64;
        for i in 0..n_qubits {
            for j in (i + 1)..n_qubits {
                for mu in 0..3 {
                    for nu in 0..3 {
                        let x = stream.next_symmetric();
                        max_abs = max_abs.max(x.abs());
                        entries.set_sym(3 * i + mu, 3 * j + nu, x);
                    }
                }
            }
        }
        if max_abs == 0.0 {
            continue;
        }
        let dim = entries.n();
        let mut scaled = Matrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                // IEEE division sends the extremal entry to exactly ±1.
                scaled.set(r, c, entries.get(r, c) / max_abs);
            }
        }
        return Ok(CouplingRatioMatrix {
            n_qubits,
            entries: scaled,
            sim_time: 1.0,
            lambda_tilde_min: None,
        });
    }
    Err(RandomMatrixError::Degenerate(
        HamiltonianError::DegenerateSample {
            n_qubits,
            retries: RANDOM_RETRIES,
        },
    ))
}
