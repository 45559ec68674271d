//! Deterministic eigendecomposition of dense real symmetric matrices.
//!
//! The solver is cyclic Jacobi: sweep the strict upper triangle in row-major
//! order and annihilate each pivot `a_pq` with a Givens rotation, accumulating
//! the rotations into an eigenvector matrix `V` so that `A = V Λ Vᵀ`. The
//! off-diagonal Frobenius mass decreases monotonically and (asymptotically)
//! quadratically per sweep, so convergence to `1e-14·‖A‖_F` takes a handful of
//! sweeps for the dimensions used here (up to a few hundred).
//!
//! Every choice is deterministic — fixed sweep order, a fixed rotation-angle
//! branch, stable descending eigenvalue sort (ties keep diagonal order), and a
//! fixed sign convention (each eigenvector's largest-magnitude entry, lowest
//! index on ties, is made non-negative) — so repeat runs are bit-identical.

use alloc::vec::Vec;

use core::fmt;

use crate::fmath;
use crate::hamiltonian::BlockVector;
use crate::matrix::Matrix;

/// Relative symmetry tolerance for accepted inputs.
const SYMMETRY_TOL: f64 = 1e-10;
/// Convergence threshold for the off-diagonal Frobenius mass, relative to
/// `‖A‖_F` (which Jacobi rotations preserve).
const OFF_DIAGONAL_TOL: f64 = 1e-14;
/// Hard cap on sweeps; quadratic convergence makes hitting this pathological.
const MAX_SWEEPS: usize = 100;

/// Errors from the symmetric eigensolver.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    /// Input deviates from symmetry by more than the relative tolerance.
    NotSymmetric { max_asymmetry: f64 },
    /// The sweep cap was reached before the off-diagonal mass converged.
    NoConvergence { sweeps: usize },
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::NotSymmetric { max_asymmetry } => {
                write!(
                    f,
                    "matrix is not symmetric: max |a_ij - a_ji| = {max_asymmetry:e}"
                )
            }
            SpectralError::NoConvergence { sweeps } => {
                write!(
                    f,
                    "Jacobi iteration did not converge within {sweeps} sweeps"
                )
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SpectralError {}

/// Full eigendecomposition of a real symmetric matrix: eigenvalues sorted
/// descending, eigenvector `k` paired with eigenvalue `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    dim: usize,
    eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` is the unit eigenvector for `eigenvalues[k]`.
    eigenvectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    /// Matrix dimension (= number of eigenpairs).
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Eigenvalues, sorted descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvalue `k` (0 = largest).
    #[inline]
    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.eigenvalues[k]
    }

    /// Unit eigenvector paired with eigenvalue `k`.
    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.eigenvectors[k]
    }

    /// Eigenvector `k` viewed as per-qubit 3-blocks (dimension must be 3N).
    pub fn eigenvector_blocks(&self, k: usize) -> BlockVector {
        BlockVector::from_flat(&self.eigenvectors[k])
    }

    /// Smallest eigenvalue (last of the descending list).
    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("dimension >= 1")
    }
}

/// Eigendecomposes a real symmetric matrix.
///
/// Accepts inputs symmetric to within `1e-10` relative to the largest entry
/// magnitude (and at least that absolutely); the upper and lower triangles
/// are averaged before iterating so roundoff-level asymmetry cannot leak into
/// the result.
pub fn eigendecompose_symmetric(a: &Matrix) -> Result<EigenDecomposition, SpectralError> {
    let n = a.n();
    assert!(n >= 1, "eigendecomposition needs dimension >= 1");
    let asym = a.max_asymmetry();
    if asym > SYMMETRY_TOL * a.max_abs().max(1.0) {
        return Err(SpectralError::NotSymmetric {
            max_asymmetry: asym,
        });
    }

    // Work on the exactly symmetrized copy.
    let mut m = a.clone();
    for r in 0..n {
        for c in (r + 1)..n {
            let avg = 0.5 * (a.get(r, c) + a.get(c, r));
            m.set_sym(r, c, avg);
        }
    }

    let mut v = Matrix::identity(n);
    // Rotations preserve the Frobenius norm, so the convergence scale is
    // computed once up front.
    let frob = m.frobenius_norm();

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut off_sqr = 0.0;
        for r in 0..n {
            for c in (r + 1)..n {
                let x = m.get(r, c);
                off_sqr += 2.0 * x * x;
            }
        }
        // `<=` so the all-zero matrix (frob = 0) converges immediately.
        if fmath::sqrt(off_sqr) <= OFF_DIAGONAL_TOL * frob {
            converged = true;
            break;
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let (c, s, t) = rotation_coefficients(m.get(p, p), m.get(q, q), apq);

                // A ← Gᵀ A G for the Givens rotation G in the (p, q) plane.
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = m.get(r, p);
                    let arq = m.get(r, q);
                    m.set_sym(r, p, c * arp - s * arq);
                    m.set_sym(r, q, s * arp + c * arq);
                }
                m.set(p, p, m.get(p, p) - t * apq);
                m.set(q, q, m.get(q, q) + t * apq);
                m.set_sym(p, q, 0.0);

                // V ← V G, accumulating eigenvectors as columns.
                for r in 0..n {
                    let vrp = v.get(r, p);
                    let vrq = v.get(r, q);
                    v.set(r, p, c * vrp - s * vrq);
                    v.set(r, q, s * vrp + c * vrq);
                }
            }
        }
    }
    if !converged {
        return Err(SpectralError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    // Stable descending sort; ties keep the diagonal (sweep) order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m.get(j, j)
            .partial_cmp(&m.get(i, i))
            .expect("eigenvalues are finite")
    });

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for &k in &order {
        eigenvalues.push(m.get(k, k));
        let mut col: Vec<f64> = (0..n).map(|r| v.get(r, k)).collect();
        // Sign convention: the largest-magnitude entry (lowest index on
        // ties) is made non-negative.
        let mut lead = 0;
        for (r, x) in col.iter().enumerate() {
            if x.abs() > col[lead].abs() {
                lead = r;
            }
        }
        if col[lead] < 0.0 {
            for x in &mut col {
                *x = -*x;
            }
        }
        eigenvectors.push(col);
    }

    Ok(EigenDecomposition {
        dim: n,
        eigenvalues,
        eigenvectors,
    })
}

/// Smallest eigenvalue of a real symmetric matrix.
pub fn min_eigenvalue(a: &Matrix) -> Result<f64, SpectralError> {
    Ok(eigendecompose_symmetric(a)?.min_eigenvalue())
}

/// Cosine, sine, and tangent of the Givens angle that annihilates the pivot
/// `a_pq`, using the smaller-magnitude root of `t² + 2tθ − 1 = 0` with
/// `θ = (a_qq − a_pp)/(2 a_pq)` for stability.
fn rotation_coefficients(app: f64, aqq: f64, apq: f64) -> (f64, f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta == 0.0 {
        1.0
    } else if theta.abs() > 1e150 {
        // θ² would overflow; the exact root is ~1/(2θ) here.
        1.0 / (2.0 * theta)
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + fmath::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / fmath::sqrt(t * t + 1.0);
    (c, t * c, t)
}
