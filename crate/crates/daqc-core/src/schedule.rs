//! From rank-one terms to an executable digital-analog schedule.
//!
//! Each γ block is realized by a single-qubit rotation `R(θ, n̂)` =
//! `cos(θ/2)·I − i sin(θ/2)(n̂·σ)` chosen so that conjugation maps `σ^z` to
//! `γ·σ`:
//!
//! `R σ^z R† = γ^x σ^x + γ^y σ^y + γ^z σ^z` with
//! `γ = (n_x n_z(1−cosθ) + n_y sinθ,  n_y n_z(1−cosθ) − n_x sinθ,
//!       n_z²(1−cosθ) + cosθ)`.
//!
//! Restricting to equatorial axes (`n_z = 0`) leaves `γ = (n_y sinθ,
//! −n_x sinθ, cosθ)`, which is invertible in closed form: `θ = arccos(γ^z)`
//! and `n̂ = (−γ^y, γ^x, 0)/sinθ`, with a conventional axis `(1,0,0)` at the
//! poles. A digital-analog block is then `U e^{−it H_S} U†` with
//! `U = ⊗_i R(θ_i, n̂_i)`, whose effective two-body couplings are
//! `h^{μν}_{ij} = h^{zz}_{ij}·γ^μ_i·γ^ν_j` — the rank-one structure the
//! decomposition stage emits.

use alloc::string::String;
use alloc::vec::Vec;

use core::fmt;

use crate::coupling::{build_coupling_ratio_matrix, gauge_fix_psd};
use crate::decompose::{decompose, DecomposeDriverError, DecomposeError, Decomposition};
use crate::fmath;
use crate::hamiltonian::{
    vec3, BlockVector, HamiltonianError, PauliAxis, TwoBodyHamiltonian, Vec3,
};
use crate::spectral::SpectralError;

/// Unit-norm tolerance for γ inputs to the inverse map.
const GAMMA_UNIT_TOL: f64 = 1e-10;
/// Below this sine magnitude the rotation axis is degenerate and the
/// conventional axis is used.
const POLE_SIN_TOL: f64 = 1e-12;
/// Effective couplings smaller than this are dropped to keep Hamiltonians
/// sparse.
const COUPLING_FLOOR: f64 = 1e-15;

/// Generator tag embedded in schedule metadata.
pub const GENERATOR: &str = concat!("daqc-core ", env!("CARGO_PKG_VERSION"));

/// Axis-angle single-qubit rotation: `θ ∈ [0, π]`, unit axis with `n_z = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqgParams {
    /// Rotation angle in radians, `[0, π]`.
    pub angle: f64,
    /// Unit rotation axis; its z-component is always exactly 0.
    pub axis: Vec3,
}

/// One schedule step: simultaneous single-qubit rotations around an analog
/// evolution of the source for `analog_time`.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitalAnalogBlock {
    /// Strictly positive analog duration.
    pub analog_time: f64,
    /// One rotation per qubit, qubit-ordered.
    pub rotations: Vec<SqgParams>,
}

/// Full compiled schedule, self-describing (carries its source Hamiltonian
/// and provenance metadata).
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub n_qubits: usize,
    /// The source (ZZ) Hamiltonian the analog blocks evolve under.
    pub source: TwoBodyHamiltonian,
    /// Simulated time T of the target evolution.
    pub sim_time: f64,
    pub blocks: Vec<DigitalAnalogBlock>,
    /// Sum of eigenvalues dropped by the discard threshold.
    pub discarded_weight: f64,
    /// Version tag of the generating library.
    pub generator: String,
}

impl Schedule {
    /// Total analog time `Σ blocks analog_time`.
    pub fn total_analog_time(&self) -> f64 {
        self.blocks.iter().map(|b| b.analog_time).sum()
    }
}

/// Errors from rotation synthesis.
#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleError {
    /// A γ vector handed to the inverse map was not unit-norm.
    NotUnit { norm: f64 },
}

impl fmt::Display for ScheduleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleError::NotUnit { norm } => {
                write!(f, "gamma vector norm {norm} deviates from 1 beyond 1e-10")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ScheduleError {}

/// Image of `σ^z` under conjugation by `R(θ, n̂)` (general axis, not just
/// equatorial).
pub fn rotation_to_gamma(params: &SqgParams) -> Vec3 {
    let (theta, n) = (params.angle, params.axis);
    let cos = fmath::cos(theta);
    let sin = fmath::sin(theta);
    let omc = 1.0 - cos;
    [
        n[0] * n[2] * omc + n[1] * sin,
        n[1] * n[2] * omc - n[0] * sin,
        n[2] * n[2] * omc + cos,
    ]
}

/// Equatorial-axis rotation whose conjugation image of `σ^z` is `gamma`.
///
/// `θ = arccos(γ^z)`; away from the poles the axis is
/// `(−γ^y, γ^x, 0)/sinθ`, renormalized; at either pole (`sinθ ≤ 1e-12`) the
/// axis is the conventional `(1, 0, 0)`.
pub fn gamma_to_rotation(gamma: Vec3) -> Result<SqgParams, ScheduleError> {
    let norm = vec3::norm(gamma);
    if (norm - 1.0).abs() > GAMMA_UNIT_TOL {
        return Err(ScheduleError::NotUnit { norm });
    }
    // The polar angle is taken against the true norm: arccos has infinite
    // slope at ±1, so an input that is unit-short by one epsilon would
    // otherwise read as a ~1e-8 tilt about an arbitrary axis.
    let theta = fmath::acos((gamma[2] / norm).clamp(-1.0, 1.0));
    let sin = fmath::sin(theta);
    if sin <= POLE_SIN_TOL {
        return Ok(SqgParams {
            angle: theta,
            axis: [1.0, 0.0, 0.0],
        });
    }
    let raw = [-gamma[1] / sin, gamma[0] / sin, 0.0];
    let axis = vec3::scale(raw, 1.0 / vec3::norm(raw));
    Ok(SqgParams { angle: theta, axis })
}

/// Effective two-body couplings of one digital-analog block:
/// `h^{μν}_{ij} = h^{zz}_{ij}·γ^μ_i·γ^ν_j` over every source pair, with
/// coefficients below `1e-15` dropped.
pub fn effective_couplings(
    source: &TwoBodyHamiltonian,
    gamma: &BlockVector,
) -> Result<TwoBodyHamiltonian, HamiltonianError> {
    if let Some((i, j, mu, nu)) = source.first_non_zz() {
        return Err(HamiltonianError::NonZzSource { i, j, mu, nu });
    }
    let mut out = TwoBodyHamiltonian::new(source.n_qubits());
    for ((i, j, _, _), h_zz) in source.terms() {
        for mu in PauliAxis::ALL {
            for nu in PauliAxis::ALL {
                let c = h_zz * gamma.block(i)[mu.index()] * gamma.block(j)[nu.index()];
                if c.abs() >= COUPLING_FLOOR {
                    out.add_coupling(i, j, mu, nu, c)?;
                }
            }
        }
    }
    Ok(out)
}

/// Converts a decomposition into a schedule: one block per term, in term
/// order, with rotations synthesized per qubit.
pub fn assemble_schedule(
    decomposition: &Decomposition,
    source: &TwoBodyHamiltonian,
    sim_time: f64,
) -> Result<Schedule, ScheduleError> {
    let n = decomposition.n_qubits();
    let mut blocks = Vec::with_capacity(decomposition.terms().len());
    for term in decomposition.terms() {
        let mut rotations = Vec::with_capacity(n);
        for i in 0..n {
            rotations.push(gamma_to_rotation(term.gamma.block(i))?);
        }
        blocks.push(DigitalAnalogBlock {
            analog_time: term.time,
            rotations,
        });
    }
    Ok(Schedule {
        n_qubits: n,
        source: source.clone(),
        sim_time,
        blocks,
        discarded_weight: decomposition.discarded_weight(),
        generator: String::from(GENERATOR),
    })
}

/// Any failure along the compile pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum CompileError {
    Hamiltonian(HamiltonianError),
    Spectral(SpectralError),
    Decompose(DecomposeError),
    Schedule(ScheduleError),
}

impl fmt::Display for CompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompileError::Hamiltonian(e) => write!(f, "{e}"),
            CompileError::Spectral(e) => write!(f, "{e}"),
            CompileError::Decompose(e) => write!(f, "{e}"),
            CompileError::Schedule(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CompileError {}

impl From<HamiltonianError> for CompileError {
    fn from(e: HamiltonianError) -> Self {
        CompileError::Hamiltonian(e)
    }
}

impl From<SpectralError> for CompileError {
    fn from(e: SpectralError) -> Self {
        CompileError::Spectral(e)
    }
}

impl From<DecomposeError> for CompileError {
    fn from(e: DecomposeError) -> Self {
        CompileError::Decompose(e)
    }
}

impl From<ScheduleError> for CompileError {
    fn from(e: ScheduleError) -> Self {
        CompileError::Schedule(e)
    }
}

impl From<DecomposeDriverError> for CompileError {
    fn from(e: DecomposeDriverError) -> Self {
        match e {
            DecomposeDriverError::Spectral(s) => CompileError::Spectral(s),
            DecomposeDriverError::Decompose(d) => CompileError::Decompose(d),
        }
    }
}

/// End-to-end compilation: validate, build the coupling-ratio matrix, gauge
/// fix, decompose at `discard_threshold`, and assemble the schedule.
pub fn compile_schedule(
    problem: &TwoBodyHamiltonian,
    source: &TwoBodyHamiltonian,
    sim_time: f64,
    discard_threshold: f64,
) -> Result<Schedule, CompileError> {
    let b = build_coupling_ratio_matrix(problem, source, sim_time)?;
    let b = gauge_fix_psd(b)?;
    let d = decompose(&b, discard_threshold)?;
    Ok(assemble_schedule(&d, source, sim_time)?)
}

/// `λ̃_min` recorded during compilation, recomputed for reporting: compile
/// and also return the gauge-fixed matrix's shift. Convenience for front
/// ends that want the summary without re-running the pipeline.
pub fn compile_schedule_with_shift(
    problem: &TwoBodyHamiltonian,
    source: &TwoBodyHamiltonian,
    sim_time: f64,
    discard_threshold: f64,
) -> Result<(Schedule, f64), CompileError> {
    let b = build_coupling_ratio_matrix(problem, source, sim_time)?;
    let b = gauge_fix_psd(b)?;
    let lambda = b.lambda_tilde_min().unwrap_or(0.0);
    let d = decompose(&b, discard_threshold)?;
    Ok((assemble_schedule(&d, source, sim_time)?, lambda))
}
