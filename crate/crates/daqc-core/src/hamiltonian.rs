//! Two-body Pauli Hamiltonians and the compatibility rules between a problem
//! Hamiltonian and a ZZ-only source Hamiltonian.
//!
//! A `TwoBodyHamiltonian` is a sparse map from `(i, j, μ, ν)` with `i < j` to
//! a real coefficient: `H = Σ h^{μν}_{ij} σ^μ_i σ^ν_j`. Single-qubit terms are
//! out of scope. A source is *compatible* with a problem when the source is
//! ZZ-only and carries a nonzero coupling on every pair the problem couples.

use alloc::collections::BTreeMap;
use core::fmt;

use crate::fmath;

/// One of the three Pauli axes, indexed x→0, y→1, z→2.
///
/// The index fixes the 3N layout of the coupling-ratio matrix: the coupling
/// `(i, j, μ, ν)` lands at row `3i+μ`, column `3j+ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    /// All axes in index order.
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    /// Fixed index: x→0, y→1, z→2.
    #[inline]
    pub fn index(self) -> usize {
        match self {
            PauliAxis::X => 0,
            PauliAxis::Y => 1,
            PauliAxis::Z => 2,
        }
    }

    /// Inverse of [`PauliAxis::index`].
    pub fn from_index(idx: usize) -> Option<PauliAxis> {
        match idx {
            0 => Some(PauliAxis::X),
            1 => Some(PauliAxis::Y),
            2 => Some(PauliAxis::Z),
            _ => None,
        }
    }

    /// Lower-case letter: `x`, `y`, or `z`.
    pub fn letter(self) -> char {
        match self {
            PauliAxis::X => 'x',
            PauliAxis::Y => 'y',
            PauliAxis::Z => 'z',
        }
    }
}

/// Real 3-vector: one per-qubit block of a length-3N vector.
pub type Vec3 = [f64; 3];

/// Vector helpers for [`Vec3`].
pub mod vec3 {
    use super::Vec3;
    use crate::fmath;

    /// Dot product.
    #[inline]
    pub fn dot(a: Vec3, b: Vec3) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    /// Cross product `a × b`.
    #[inline]
    pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    /// Squared 2-norm.
    #[inline]
    pub fn norm_sqr(a: Vec3) -> f64 {
        dot(a, a)
    }

    /// 2-norm.
    #[inline]
    pub fn norm(a: Vec3) -> f64 {
        fmath::sqrt(norm_sqr(a))
    }

    /// Scalar multiple.
    #[inline]
    pub fn scale(a: Vec3, s: f64) -> Vec3 {
        [a[0] * s, a[1] * s, a[2] * s]
    }

    /// Componentwise `a + s·b`.
    #[inline]
    pub fn add_scaled(a: Vec3, s: f64, b: Vec3) -> Vec3 {
        [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
    }
}

/// Length-3N real vector viewed as N per-qubit blocks of 3.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockVector {
    blocks: alloc::vec::Vec<Vec3>,
}

impl BlockVector {
    /// Wraps a list of per-qubit blocks.
    pub fn new(blocks: alloc::vec::Vec<Vec3>) -> Self {
        Self { blocks }
    }

    /// All-zero vector for `n_qubits` qubits.
    pub fn zeros(n_qubits: usize) -> Self {
        Self {
            blocks: alloc::vec![[0.0; 3]; n_qubits],
        }
    }

    /// Reinterprets a flat length-3N slice as N blocks.
    ///
    /// # Panics
    /// If the length is not a multiple of 3.
    pub fn from_flat(flat: &[f64]) -> Self {
        assert!(
            flat.len().is_multiple_of(3),
            "flat length {} not a multiple of 3",
            flat.len()
        );
        Self {
            blocks: flat.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect(),
        }
    }

    /// Number of qubit blocks.
    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.blocks.len()
    }

    /// Block for qubit `i`.
    #[inline]
    pub fn block(&self, i: usize) -> Vec3 {
        self.blocks[i]
    }

    /// All blocks in qubit order.
    pub fn blocks(&self) -> &[Vec3] {
        &self.blocks
    }

    /// Overwrites the block for qubit `i`.
    pub fn set_block(&mut self, i: usize, v: Vec3) {
        self.blocks[i] = v;
    }

    /// 2-norm of the full 3N vector.
    pub fn norm(&self) -> f64 {
        fmath::sqrt(self.blocks.iter().map(|b| vec3::norm_sqr(*b)).sum())
    }

    /// Largest squared block norm `max_i ‖v_i‖²`.
    pub fn max_block_norm_sqr(&self) -> f64 {
        self.blocks
            .iter()
            .fold(0.0, |m, b| m.max(vec3::norm_sqr(*b)))
    }
}

/// Errors for Hamiltonian construction and compatibility validation.
#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianError {
    /// The source Hamiltonian carries a coupling on an axis pair other than
    /// (z, z).
    NonZzSource {
        i: usize,
        j: usize,
        mu: PauliAxis,
        nu: PauliAxis,
    },
    /// The problem couples a pair the source does not.
    IncompatibleTopology { i: usize, j: usize },
    /// Problem and source disagree on the qubit count.
    SizeMismatch { problem: usize, source: usize },
    /// A coupling was declared with `i ≥ j` or an index at or beyond
    /// `n_qubits`.
    InvalidPair { i: usize, j: usize, n_qubits: usize },
    /// A coupling coefficient is NaN or infinite.
    NonFiniteCoefficient { i: usize, j: usize },
    /// The same `(i, j, μ, ν)` key was declared twice.
    DuplicateCoupling {
        i: usize,
        j: usize,
        mu: PauliAxis,
        nu: PauliAxis,
    },
    /// A randomly drawn coupling matrix was entirely zero after the retry
    /// budget was exhausted.
    DegenerateSample { n_qubits: usize, retries: usize },
}

impl fmt::Display for HamiltonianError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HamiltonianError::NonZzSource { i, j, mu, nu } => write!(
                f,
                "source Hamiltonian must be ZZ-only, found {}{} coupling on pair ({i}, {j})",
                mu.letter(),
                nu.letter()
            ),
            HamiltonianError::IncompatibleTopology { i, j } => write!(
                f,
                "problem couples pair ({i}, {j}) but the source has no ZZ coupling there"
            ),
            HamiltonianError::SizeMismatch { problem, source } => {
                write!(f, "problem has {problem} qubits but source has {source}")
            }
            HamiltonianError::InvalidPair { i, j, n_qubits } => write!(
                f,
                "coupling pair ({i}, {j}) invalid: need 0 <= i < j < {n_qubits}"
            ),
            HamiltonianError::NonFiniteCoefficient { i, j } => {
                write!(f, "coupling coefficient on pair ({i}, {j}) is not finite")
            }
            HamiltonianError::DuplicateCoupling { i, j, mu, nu } => write!(
                f,
                "duplicate coupling ({i}, {j}, {}{})",
                mu.letter(),
                nu.letter()
            ),
            HamiltonianError::DegenerateSample { n_qubits, retries } => write!(
                f,
                "random {n_qubits}-qubit coupling matrix was all-zero after {retries} retries"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for HamiltonianError {}

/// Sparse two-body Pauli Hamiltonian `Σ h^{μν}_{ij} σ^μ_i σ^ν_j` with
/// `0 ≤ i < j < N`.
///
/// Keys are unique, coefficients finite and nonzero (zero coefficients are
/// omitted on insert). Iteration order is the sorted key order, so all
/// downstream constructions are deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoBodyHamiltonian {
    n_qubits: usize,
    couplings: BTreeMap<(usize, usize, PauliAxis, PauliAxis), f64>,
}

impl TwoBodyHamiltonian {
    /// Empty Hamiltonian on `n_qubits` qubits.
    ///
    /// # Panics
    /// If `n_qubits` is 0.
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1, "a Hamiltonian needs at least one qubit");
        Self {
            n_qubits,
            couplings: BTreeMap::new(),
        }
    }

    /// Number of qubits N.
    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Adds the coupling `h^{μν}_{ij} = coeff`.
    ///
    /// Zero coefficients are dropped silently (the term map stores only
    /// structural nonzeros). Re-adding an existing key is an error.
    pub fn add_coupling(
        &mut self,
        i: usize,
        j: usize,
        mu: PauliAxis,
        nu: PauliAxis,
        coeff: f64,
    ) -> Result<(), HamiltonianError> {
        if i >= j || j >= self.n_qubits {
            return Err(HamiltonianError::InvalidPair {
                i,
                j,
                n_qubits: self.n_qubits,
            });
        }
        if !coeff.is_finite() {
            return Err(HamiltonianError::NonFiniteCoefficient { i, j });
        }
        if coeff == 0.0 {
            return Ok(());
        }
        if self.couplings.contains_key(&(i, j, mu, nu)) {
            return Err(HamiltonianError::DuplicateCoupling { i, j, mu, nu });
        }
        self.couplings.insert((i, j, mu, nu), coeff);
        Ok(())
    }

    /// Coefficient `h^{μν}_{ij}`, or 0 if the term is absent.
    #[inline]
    pub fn coupling(&self, i: usize, j: usize, mu: PauliAxis, nu: PauliAxis) -> f64 {
        self.couplings.get(&(i, j, mu, nu)).copied().unwrap_or(0.0)
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.couplings.len()
    }

    /// Terms in sorted key order: `((i, j, μ, ν), h)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize, PauliAxis, PauliAxis), f64)> + '_ {
        self.couplings.iter().map(|(k, v)| (*k, *v))
    }

    /// True when every stored term is a (z, z) coupling.
    pub fn is_zz_only(&self) -> bool {
        self.couplings
            .keys()
            .all(|&(_, _, mu, nu)| mu == PauliAxis::Z && nu == PauliAxis::Z)
    }

    /// First stored term that is not (z, z), if any.
    pub fn first_non_zz(&self) -> Option<(usize, usize, PauliAxis, PauliAxis)> {
        self.couplings
            .keys()
            .find(|&&(_, _, mu, nu)| !(mu == PauliAxis::Z && nu == PauliAxis::Z))
            .copied()
    }
}

/// Checks that `source` can implement `problem`: same qubit count, source
/// ZZ-only, and a nonzero source ZZ coupling on every pair the problem
/// couples (on any axis pair).
pub fn validate_compatibility(
    problem: &TwoBodyHamiltonian,
    source: &TwoBodyHamiltonian,
) -> Result<(), HamiltonianError> {
    if problem.n_qubits() != source.n_qubits() {
        return Err(HamiltonianError::SizeMismatch {
            problem: problem.n_qubits(),
            source: source.n_qubits(),
        });
    }
    if let Some((i, j, mu, nu)) = source.first_non_zz() {
        return Err(HamiltonianError::NonZzSource { i, j, mu, nu });
    }
    for ((i, j, _, _), _) in problem.terms() {
        if source.coupling(i, j, PauliAxis::Z, PauliAxis::Z) == 0.0 {
            return Err(HamiltonianError::IncompatibleTopology { i, j });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(
        n: usize,
        i: usize,
        j: usize,
        mu: PauliAxis,
        nu: PauliAxis,
        c: f64,
    ) -> TwoBodyHamiltonian {
        let mut h = TwoBodyHamiltonian::new(n);
        h.add_coupling(i, j, mu, nu, c).unwrap();
        h
    }

    #[test]
    fn axis_index_mapping_is_fixed() {
        assert_eq!(PauliAxis::X.index(), 0);
        assert_eq!(PauliAxis::Y.index(), 1);
        assert_eq!(PauliAxis::Z.index(), 2);
        for a in PauliAxis::ALL {
            assert_eq!(PauliAxis::from_index(a.index()), Some(a));
        }
        assert_eq!(PauliAxis::from_index(3), None);
    }

    #[test]
    fn compatible_pair_passes() {
        let p = single(2, 0, 1, PauliAxis::Z, PauliAxis::Z, 0.5);
        let s = single(2, 0, 1, PauliAxis::Z, PauliAxis::Z, 1.0);
        assert_eq!(validate_compatibility(&p, &s), Ok(()));
    }

    #[test]
    fn missing_source_coupling_names_the_pair() {
        let p = single(3, 0, 1, PauliAxis::X, PauliAxis::Y, 0.3);
        let s = single(3, 0, 2, PauliAxis::Z, PauliAxis::Z, 1.0);
        assert_eq!(
            validate_compatibility(&p, &s),
            Err(HamiltonianError::IncompatibleTopology { i: 0, j: 1 })
        );
    }

    #[test]
    fn non_zz_source_is_rejected() {
        let p = single(2, 0, 1, PauliAxis::X, PauliAxis::X, 1.0);
        let s = single(2, 0, 1, PauliAxis::X, PauliAxis::X, 1.0);
        assert_eq!(
            validate_compatibility(&p, &s),
            Err(HamiltonianError::NonZzSource {
                i: 0,
                j: 1,
                mu: PauliAxis::X,
                nu: PauliAxis::X
            })
        );
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let p = single(3, 0, 1, PauliAxis::Z, PauliAxis::Z, 1.0);
        let s = single(2, 0, 1, PauliAxis::Z, PauliAxis::Z, 1.0);
        assert_eq!(
            validate_compatibility(&p, &s),
            Err(HamiltonianError::SizeMismatch {
                problem: 3,
                source: 2
            })
        );
    }

    #[test]
    fn invalid_pairs_and_duplicates_are_rejected() {
        let mut h = TwoBodyHamiltonian::new(3);
        assert!(matches!(
            h.add_coupling(1, 1, PauliAxis::Z, PauliAxis::Z, 1.0),
            Err(HamiltonianError::InvalidPair { .. })
        ));
        assert!(matches!(
            h.add_coupling(0, 3, PauliAxis::Z, PauliAxis::Z, 1.0),
            Err(HamiltonianError::InvalidPair { .. })
        ));
        assert!(matches!(
            h.add_coupling(0, 1, PauliAxis::Z, PauliAxis::Z, f64::NAN),
            Err(HamiltonianError::NonFiniteCoefficient { .. })
        ));
        h.add_coupling(0, 1, PauliAxis::X, PauliAxis::Y, 0.5)
            .unwrap();
        assert!(matches!(
            h.add_coupling(0, 1, PauliAxis::X, PauliAxis::Y, 0.7),
            Err(HamiltonianError::DuplicateCoupling { .. })
        ));
    }

    #[test]
    fn zero_coefficients_are_omitted() {
        let mut h = TwoBodyHamiltonian::new(2);
        h.add_coupling(0, 1, PauliAxis::Z, PauliAxis::Z, 0.0)
            .unwrap();
        assert_eq!(h.term_count(), 0);
        assert_eq!(h.coupling(0, 1, PauliAxis::Z, PauliAxis::Z), 0.0);
    }

    #[test]
    fn block_vector_round_trips_flat_layout() {
        let v = BlockVector::from_flat(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(v.n_qubits(), 2);
        assert_eq!(v.block(0), [1.0, 2.0, 3.0]);
        assert_eq!(v.block(1), [4.0, 5.0, 6.0]);
        assert_eq!(v.max_block_norm_sqr(), 16.0 + 25.0 + 36.0);
    }

    #[test]
    fn vec3_cross_follows_right_hand_rule() {
        assert_eq!(
            vec3::cross([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
            [0.0, 0.0, 1.0]
        );
        assert_eq!(
            vec3::cross([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]),
            [0.0, 1.0, 0.0]
        );
    }
}
