//! Expansion of the gauge-fixed coupling-ratio matrix into positively
//! weighted rank-one projectors of block-normalized vectors.
//!
//! For each eigenpair `(λ > 0, v)` of the PSD matrix, the eigenvector's
//! per-qubit blocks `v_i` generally have different norms, but a valid
//! digital-analog block needs *unit* 3-blocks (each block is the image of
//! `σ^z` under a single-qubit rotation). The fix: pad every block up to the
//! common norm `m = max_i ‖v_i‖` with a perturbation `ε_i` orthogonal to
//! `v_i`, and average the padding away over `2N` steps `ℓ` and both signs:
//!
//! - `ε_i^{(ℓ)} = cos θ_i^{(ℓ)} η_i + sin θ_i^{(ℓ)} ξ_i`, with `η_i ⊥ ξ_i ⊥ v_i`
//!   and `‖η_i‖² = ‖ξ_i‖² = m² − ‖v_i‖²`,
//! - `θ_i^{(ℓ)} = π·i·(ℓ−1)/N` (zero-based qubit index `i`, `ℓ = 1..2N`),
//! - `γ_{±,i}^{(ℓ)} = (v_i ± ε_i^{(ℓ)}) / √(‖v_i‖² + ‖ε_i^{(ℓ)}‖²)`,
//! - every term gets the same time `t = λ·m²/(4N)`.
//!
//! Summing `t·γγᵀ` over the `4N` terms, the `±` pairing cancels all `v–ε`
//! cross blocks, and the angle grid makes `Σ_ℓ ε_i^{(ℓ)} ε_j^{(ℓ)ᵀ} = 0` for
//! `i ≠ j` (for each qubit pair the sum reduces to full-period sums of
//! `cos/sin` products at distinct harmonics). What survives off-diagonal is
//! exactly `λ·v_i v_jᵀ`, so the full sum over eigenpairs reproduces the
//! matrix's off-diagonal blocks. Per-qubit diagonal blocks pick up `ε ε ᵀ`
//! residue, but those correspond to single-qubit terms and the identity and
//! drop out of the simulated interaction, so reconstruction is checked — and
//! guaranteed — off-diagonal only.
//!
//! Total analog time: `Σ t = Σ_λ λ·m² ≤ Σ_λ λ = tr = 3N·|λ̃_min|` since
//! `m² ≤ ‖v‖² = 1`.

use alloc::vec::Vec;

use core::fmt;

use crate::coupling::CouplingRatioMatrix;
use crate::fmath;
use crate::hamiltonian::{vec3, BlockVector, Vec3};
use crate::matrix::Matrix;
use crate::spectral::{eigendecompose_symmetric, SpectralError};

/// Unit-norm tolerance for eigenvector inputs.
const UNIT_TOL: f64 = 1e-12;
/// Negative eigenvalues of gauge-fixed matrices within this window of zero
/// are treated as the roundoff they are and clamped to zero time.
const EIGENVALUE_CLAMP: f64 = 1e-10;
/// Norm-square deficits below this fraction of the maximum block norm are
/// treated as zero: the block gets no padding direction.
const PADDING_SNAP_TOL: f64 = 1e-12;

/// Sign of the `±` branch in `γ_± = (v ± ε)/…`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// One rank-one term `t·γγᵀ`: an analog duration plus per-qubit unit
/// 3-blocks, tagged with where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTerm {
    /// Analog time `t = λ·m²/(4N)`, strictly positive for retained terms.
    pub time: f64,
    /// Per-qubit unit blocks `γ_i`.
    pub gamma: BlockVector,
    /// Position of the originating eigenvalue in the descending spectrum.
    pub eigen_index: usize,
    /// Step `ℓ ∈ 1..=2N`.
    pub step: usize,
    /// Which of `γ_±` this is.
    pub sign: Sign,
}

/// Ordered list of terms for a full matrix, plus the total weight of
/// eigenvalues dropped by the discard threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    n_qubits: usize,
    terms: Vec<GammaTerm>,
    discarded_weight: f64,
}

impl Decomposition {
    /// Number of qubits N.
    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Terms in emission order: descending eigenvalue, then step, then `+`
    /// before `−`.
    pub fn terms(&self) -> &[GammaTerm] {
        &self.terms
    }

    /// Sum of eigenvalues whose terms were dropped (threshold or zero time).
    #[inline]
    pub fn discarded_weight(&self) -> f64 {
        self.discarded_weight
    }

    /// Total analog time `Σ_q t_q`.
    pub fn total_analog_time(&self) -> f64 {
        self.terms.iter().map(|t| t.time).sum()
    }
}

/// Errors from the decomposition stage.
#[derive(Debug, Clone, PartialEq)]
pub enum DecomposeError {
    /// An eigenvector's norm deviated from 1 beyond tolerance.
    ZeroEigenvector { norm: f64 },
    /// The input matrix was not gauge-fixed (no recorded `λ̃_min`).
    NotGaugeFixed,
    /// An eigenvalue was negative beyond the roundoff clamp window — the
    /// matrix is not actually positive semidefinite.
    NegativeEigenvalue { lambda: f64 },
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::ZeroEigenvector { norm } => {
                write!(f, "eigenvector norm {norm} deviates from 1 beyond 1e-12")
            }
            DecomposeError::NotGaugeFixed => {
                write!(
                    f,
                    "coupling-ratio matrix must be gauge-fixed before decomposition"
                )
            }
            DecomposeError::NegativeEigenvalue { lambda } => {
                write!(
                    f,
                    "eigenvalue {lambda:e} is negative beyond the roundoff clamp"
                )
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DecomposeError {}

/// Deterministic orthonormal completion: two vectors `(η, ξ)` orthogonal to
/// `v` and each other, both scaled to `target_norm`.
///
/// `v = 0` returns `target_norm·(x̂, ŷ)`. Otherwise `η` is the standard basis
/// vector least aligned with `v` (lowest index on magnitude ties) with its
/// `v` component projected out, and `ξ` the normalized cross product `v × η`,
/// each scaled to `target_norm`.
pub fn orthonormal_pair(v: Vec3, target_norm: f64) -> (Vec3, Vec3) {
    debug_assert!(target_norm >= 0.0);
    let v_sqr = vec3::norm_sqr(v);
    if v_sqr == 0.0 {
        return ([target_norm, 0.0, 0.0], [0.0, target_norm, 0.0]);
    }
    // Least-aligned axis, lowest index on ties.
    let mut axis = 0;
    for mu in 1..3 {
        if v[mu].abs() < v[axis].abs() {
            axis = mu;
        }
    }
    let mut eta = [0.0; 3];
    eta[axis] = 1.0;
    eta = vec3::add_scaled(eta, -v[axis] / v_sqr, v);
    eta = vec3::scale(eta, target_norm / vec3::norm(eta));
    let mut xi = vec3::cross(v, eta);
    xi = vec3::scale(xi, target_norm / vec3::norm(xi));
    (eta, xi)
}

/// Angle `θ_i^{(ℓ)} = π·i·(ℓ−1)/N` for zero-based qubit `i` and step
/// `ℓ ∈ 1..=2N`.
#[inline]
pub fn step_angle(qubit: usize, step: usize, n_qubits: usize) -> f64 {
    core::f64::consts::PI * (qubit as f64) * ((step - 1) as f64) / (n_qubits as f64)
}

/// Expands one eigenpair into its `4N` terms (steps `ℓ = 1..2N`, signs `±`).
///
/// `eigen_index` only tags provenance. The eigenvector must be unit-norm
/// within `1e-12` and `lambda` strictly positive.
///
/// # Panics
/// If `lambda ≤ 0` (callers filter non-positive eigenvalues first).
pub fn decompose_eigenvector(
    lambda: f64,
    v: &BlockVector,
    eigen_index: usize,
) -> Result<Vec<GammaTerm>, DecomposeError> {
    assert!(lambda > 0.0, "eigenvalue must be positive, got {lambda}");
    let n = v.n_qubits();
    let norm = v.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(DecomposeError::ZeroEigenvector { norm });
    }

    let m_sqr = v.max_block_norm_sqr();
    let time = lambda * m_sqr / (4.0 * n as f64);

    // Per-qubit padding directions; blocks at the maximal norm get ε ≡ 0
    // exactly (skipping the construction avoids 0/0). Roundoff-level
    // deficits are snapped to zero too: √deficit would otherwise turn a
    // ~1e-16 deficit into a ~1e-8 spurious padding direction, which is
    // large enough to split the ± terms of uniform-norm eigenvectors and
    // spoil block-commutativity checks downstream.
    let mut etas = Vec::with_capacity(n);
    let mut xis = Vec::with_capacity(n);
    for i in 0..n {
        let deficit = m_sqr - vec3::norm_sqr(v.block(i));
        if deficit <= m_sqr * PADDING_SNAP_TOL {
            etas.push([0.0; 3]);
            xis.push([0.0; 3]);
        } else {
            let (eta, xi) = orthonormal_pair(v.block(i), fmath::sqrt(deficit));
            etas.push(eta);
            xis.push(xi);
        }
    }

    let mut terms = Vec::with_capacity(4 * n);
    for step in 1..=(2 * n) {
        for sign in [Sign::Plus, Sign::Minus] {
            let mut gamma = BlockVector::zeros(n);
            for i in 0..n {
                let vi = v.block(i);
                let theta = step_angle(i, step, n);
                let eps = vec3::add_scaled(
                    vec3::scale(etas[i], fmath::cos(theta)),
                    fmath::sin(theta),
                    xis[i],
                );
                let unnorm = vec3::add_scaled(vi, sign.factor(), eps);
                let denom = fmath::sqrt(vec3::norm_sqr(vi) + vec3::norm_sqr(eps));
                gamma.set_block(i, vec3::scale(unnorm, 1.0 / denom));
            }
            terms.push(GammaTerm {
                time,
                gamma,
                eigen_index,
                step,
                sign,
            });
        }
    }
    Ok(terms)
}

/// Decomposes a gauge-fixed coupling-ratio matrix into rank-one terms.
///
/// Eigenpairs whose per-term time `t_k = λ_k·m_k²/(4N)` exceeds
/// `discard_threshold` are expanded; the rest contribute their `λ_k` to
/// `discarded_weight`. With threshold 0 this retains every strictly positive
/// time, so term count is `4N·(number of positive eigenvalues) ≤ 12N²`.
pub fn decompose(
    matrix: &CouplingRatioMatrix,
    discard_threshold: f64,
) -> Result<Decomposition, DecomposeDriverError> {
    if !matrix.is_gauge_fixed() {
        return Err(DecomposeError::NotGaugeFixed.into());
    }
    let n = matrix.n_qubits();
    let eigen = eigendecompose_symmetric(matrix.entries())?;
    let mut terms = Vec::new();
    let mut discarded = 0.0;
    for k in 0..eigen.dim() {
        let raw = eigen.eigenvalue(k);
        let lambda = if raw < 0.0 {
            if raw < -EIGENVALUE_CLAMP {
                return Err(DecomposeError::NegativeEigenvalue { lambda: raw }.into());
            }
            0.0
        } else {
            raw
        };
        let v = eigen.eigenvector_blocks(k);
        let time = lambda * v.max_block_norm_sqr() / (4.0 * n as f64);
        if time > discard_threshold {
            terms.extend(decompose_eigenvector(lambda, &v, k).map_err(DecomposeDriverError::from)?);
        } else {
            discarded += lambda;
        }
    }
    Ok(Decomposition {
        n_qubits: n,
        terms,
        discarded_weight: discarded,
    })
}

/// Either failure mode of [`decompose`]: the eigensolver or the expansion.
#[derive(Debug, Clone, PartialEq)]
pub enum DecomposeDriverError {
    Spectral(SpectralError),
    Decompose(DecomposeError),
}

impl fmt::Display for DecomposeDriverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeDriverError::Spectral(e) => write!(f, "{e}"),
            DecomposeDriverError::Decompose(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DecomposeDriverError {}

impl From<SpectralError> for DecomposeDriverError {
    fn from(e: SpectralError) -> Self {
        DecomposeDriverError::Spectral(e)
    }
}

impl From<DecomposeError> for DecomposeDriverError {
    fn from(e: DecomposeError) -> Self {
        DecomposeDriverError::Decompose(e)
    }
}

/// Evaluates `Σ_q t_q γ_q γ_qᵀ` with every 3×3 per-qubit diagonal block
/// zeroed — the quantity the decomposition promises to match against the
/// coupling-ratio matrix's off-diagonal blocks.
pub fn reconstruct_off_diagonal(decomposition: &Decomposition) -> Matrix {
    let n = decomposition.n_qubits();
    let mut acc = Matrix::zeros(3 * n);
    let mut flat = Vec::with_capacity(3 * n);
    for term in decomposition.terms() {
        flat.clear();
        for i in 0..n {
            flat.extend_from_slice(&term.gamma.block(i));
        }
        acc.rank_one_update(term.time, &flat);
    }
    for i in 0..n {
        for mu in 0..3 {
            for nu in 0..3 {
                acc.set(3 * i + mu, 3 * i + nu, 0.0);
            }
        }
    }
    acc
}
