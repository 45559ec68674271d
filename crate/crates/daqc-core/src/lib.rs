//! Schedule synthesis for simulating arbitrary two-body qubit Hamiltonians on
//! hardware whose native interaction is a fixed set of ZZ couplings.
//!
//! The pipeline: encode the ratio between target and source couplings as a
//! symmetric matrix, shift its diagonal until it is positive semidefinite,
//! eigendecompose it, and expand each eigenpair into a short sequence of
//! digital-analog blocks — single-qubit rotations conjugating an evolution
//! under the source Hamiltonian. Summed over blocks, the effective two-body
//! couplings reproduce the off-diagonal part of the ratio matrix exactly (up
//! to floating-point roundoff); single-qubit terms remain free and are not
//! handled here.
//!
//! Module map:
//! - [`hamiltonian`]: two-body Pauli Hamiltonians and source/target
//!   compatibility checks.
//! - [`coupling`]: the coupling-ratio matrix, its positive-semidefinite gauge
//!   fix, and random sampling of normalized ratio matrices.
//! - [`spectral`]: deterministic cyclic-Jacobi eigensolver for real symmetric
//!   matrices.
//! - [`decompose`]: the eigenvector-to-rotation-axes expansion at the heart of
//!   the construction.
//! - [`schedule`]: single-qubit rotation parameters, digital-analog blocks,
//!   and schedule assembly.
//! - [`verify`]: dense state-space verification (exact vs. scheduled
//!   unitaries, Trotter convergence) for small qubit counts.
//! - [`experiment`]: batch scaling runs over random ensembles.
//!
//! The crate is `no_std`-compatible (with `alloc`): disable the default `std`
//! feature and enable `libm` to get scalar math from the `libm` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod fmath;

pub mod coupling;
pub mod decompose;
pub mod experiment;
pub mod hamiltonian;
pub mod matrix;
pub mod rng;
pub mod schedule;
pub mod spectral;
pub mod verify;

pub use coupling::{
    build_coupling_ratio_matrix, gauge_fix_psd, random_coupling_ratio_matrix, CouplingRatioMatrix,
};
pub use decompose::{decompose, reconstruct_off_diagonal, Decomposition, GammaTerm};
pub use experiment::{run_scaling_experiment, scaling_rows_to_csv, ExperimentError, ScalingRow};
pub use hamiltonian::{BlockVector, HamiltonianError, PauliAxis, TwoBodyHamiltonian, Vec3};
pub use matrix::{Complex64, ComplexMatrix, Matrix};
pub use schedule::{
    assemble_schedule, compile_schedule, compile_schedule_with_shift, effective_couplings,
    gamma_to_rotation, rotation_to_gamma, CompileError, DigitalAnalogBlock, Schedule, SqgParams,
};
pub use spectral::{eigendecompose_symmetric, EigenDecomposition, SpectralError};
pub use verify::{
    exact_unitary, hamiltonian_matrix, phase_invariant_distance, schedule_unitary,
    single_qubit_product_matrix, trotter_convergence, trotter_report, DenseOperator, TrotterReport,
    VerifyError,
};
