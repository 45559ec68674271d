//! Acceptance suite: one test per release criterion, each printing a single
//! PASS/FAIL line with the measured quantity (visible with
//! `cargo test -- --nocapture`, and in the failure report otherwise).
//!
//! Three criteria are expected to fail and are left failing deliberately;
//! the implementation follows the construction faithfully and the failures
//! are properties of the construction itself, not bugs (details in the
//! assertion messages and in the project README):
//! - criterion 04: mean total analog time for normalized random instances
//!   grows like N^{3/2} (it is lower-bounded by a multiple of the spectral
//!   shift, which grows like √N for Wigner-type random matrices), so it is
//!   neither flat within a factor 3 nor is its bound within 20% of linear.
//! - criterion 05: on 2 qubits every dense problem compiles exactly
//!   (uniform eigenvector weight makes all blocks commute), so distances
//!   sit at the roundoff floor and neither decrease monotonically nor show
//!   a first-order doubling ratio.
//! - criterion 06: on 3+ qubits, pure-ZZ problems force padded x/y-axis
//!   blocks whose pairwise cancellation is broken by the source edges
//!   between other qubit pairs; one-step distances reach O(0.1..1).

use std::time::Instant;

use daqc_core::decompose::{decompose_eigenvector, Sign};
use daqc_core::hamiltonian::{vec3, BlockVector};
use daqc_core::rng::{derive_subseed, UniformStream};
use daqc_core::{
    compile_schedule, decompose, eigendecompose_symmetric, gamma_to_rotation, gauge_fix_psd,
    hamiltonian_matrix, random_coupling_ratio_matrix, reconstruct_off_diagonal, rotation_to_gamma,
    run_scaling_experiment, single_qubit_product_matrix, trotter_convergence, PauliAxis, SqgParams,
    TwoBodyHamiltonian, Vec3,
};

const AXES: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

fn full_zz_source(n: usize) -> TwoBodyHamiltonian {
    let mut s = TwoBodyHamiltonian::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            s.add_coupling(i, j, PauliAxis::Z, PauliAxis::Z, 1.0)
                .unwrap();
        }
    }
    s
}

fn random_dense_problem(n: usize, stream: &mut UniformStream) -> TwoBodyHamiltonian {
    let mut p = TwoBodyHamiltonian::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            for mu in AXES {
                for nu in AXES {
                    p.add_coupling(i, j, mu, nu, stream.next_symmetric())
                        .unwrap();
                }
            }
        }
    }
    p
}

fn random_zz_problem(n: usize, stream: &mut UniformStream) -> TwoBodyHamiltonian {
    let mut p = TwoBodyHamiltonian::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut c = stream.next_symmetric();
            while c == 0.0 {
                c = stream.next_symmetric();
            }
            p.add_coupling(i, j, PauliAxis::Z, PauliAxis::Z, c).unwrap();
        }
    }
    p
}

/// Uniformly distributed unit 3-vector (rejection-sampled, deterministic).
fn random_unit_vec3(stream: &mut UniformStream) -> Vec3 {
    loop {
        let v = [
            stream.next_symmetric(),
            stream.next_symmetric(),
            stream.next_symmetric(),
        ];
        let n2 = vec3::norm_sqr(v);
        if (0.01..=1.0).contains(&n2) {
            return vec3::scale(v, 1.0 / vec3::norm(v));
        }
    }
}

/// Random unit vector in R^{3N} grouped into per-qubit blocks.
fn random_unit_block_vector(n: usize, stream: &mut UniformStream) -> BlockVector {
    let mut flat = vec![0.0f64; 3 * n];
    let mut norm_sqr = 0.0;
    while norm_sqr < 1e-3 {
        for x in flat.iter_mut() {
            *x = stream.next_symmetric();
        }
        norm_sqr = flat.iter().map(|x| x * x).sum();
    }
    let inv = 1.0 / norm_sqr.sqrt();
    let scaled: Vec<f64> = flat.into_iter().map(|x| x * inv).collect();
    BlockVector::from_flat(&scaled)
}

#[test]
fn criterion_01_reconstruction() {
    let mut worst = 0.0f64;
    for n in [2usize, 5, 10, 25, 50] {
        for sample in 0..100u64 {
            let seed = derive_subseed(9001, n as u64, sample);
            let fixed = gauge_fix_psd(random_coupling_ratio_matrix(n, seed).unwrap()).unwrap();
            let d = decompose(&fixed, 0.0).unwrap();
            let rec = reconstruct_off_diagonal(&d);
            let target = fixed.entries();
            for r in 0..3 * n {
                for c in 0..3 * n {
                    if r / 3 == c / 3 {
                        continue;
                    }
                    worst = worst.max((rec.get(r, c) - target.get(r, c)).abs());
                }
            }
        }
    }
    let pass = worst <= 1e-9;
    println!(
        "criterion 01 reconstruction: {} (max elementwise error {:.3e} over 500 instances, N up to 50)",
        if pass { "PASS" } else { "FAIL" },
        worst
    );
    assert!(pass, "reconstruction error {worst:e} exceeds 1e-9");
}

#[test]
fn criterion_02_block_count_bound() {
    let mut equality_hits = 0usize;
    let mut total = 0usize;
    for n in [2usize, 3, 5, 8, 13] {
        for sample in 0..20u64 {
            let seed = derive_subseed(9002, n as u64, sample);
            let fixed = gauge_fix_psd(random_coupling_ratio_matrix(n, seed).unwrap()).unwrap();
            let d = decompose(&fixed, 0.0).unwrap();
            let blocks = d.terms().len();
            total += 1;
            assert!(
                blocks <= 12 * n * n,
                "N={n}: {blocks} blocks exceeds 12N^2 = {}",
                12 * n * n
            );
            assert_eq!(blocks % (4 * n), 0, "block count not a multiple of 4N");
            let min_eig = eigendecompose_symmetric(fixed.entries())
                .unwrap()
                .min_eigenvalue();
            if min_eig > 0.0 {
                assert_eq!(
                    blocks,
                    12 * n * n,
                    "N={n}: no zero eigenvalues but only {blocks} blocks"
                );
                equality_hits += 1;
            }
        }
    }
    println!(
        "criterion 02 block-count bound: PASS (all {total} schedules within 12N^2; equality in {equality_hits} zero-free instances)"
    );
}

#[test]
fn criterion_03_analog_time_bound() {
    let mut samples = 0usize;
    let mut worst_margin = f64::NEG_INFINITY;
    for n in (2..=50usize).step_by(2) {
        for sample in 0..40u64 {
            let seed = derive_subseed(9003, n as u64, sample);
            let fixed = gauge_fix_psd(random_coupling_ratio_matrix(n, seed).unwrap()).unwrap();
            let shift = fixed.lambda_tilde_min().unwrap().abs();
            let d = decompose(&fixed, 0.0).unwrap();
            let margin = d.total_analog_time() - 3.0 * n as f64 * shift;
            worst_margin = worst_margin.max(margin);
            samples += 1;
            assert!(
                margin <= 1e-9,
                "N={n} sample {sample}: t_A exceeds 3N|shift| by {margin:e}"
            );
        }
    }
    println!(
        "criterion 03 analog-time bound: PASS ({samples} samples, worst t_A - 3N|shift| = {worst_margin:.3e})"
    );
}

#[test]
fn criterion_04_flatness_and_linear_bound() {
    let rows = run_scaling_experiment(2, 50, 4, 100, 9004, 0.0).unwrap();
    let max_ta = rows.iter().map(|r| r.mean_ta).fold(f64::MIN, f64::max);
    let min_ta = rows.iter().map(|r| r.mean_ta).fold(f64::MAX, f64::min);
    let ratio = max_ta / min_ta;

    // Proportional least-squares fit bound(N) ≈ a·N, then the largest
    // relative deviation from that line.
    let sxy: f64 = rows.iter().map(|r| r.n_qubits as f64 * r.mean_bound).sum();
    let sxx: f64 = rows.iter().map(|r| (r.n_qubits as f64).powi(2)).sum();
    let slope = sxy / sxx;
    let max_dev = rows
        .iter()
        .map(|r| {
            let fit = slope * r.n_qubits as f64;
            ((r.mean_bound - fit) / fit).abs()
        })
        .fold(0.0f64, f64::max);

    let pass = ratio <= 3.0 && max_dev <= 0.2;
    println!(
        "criterion 04 flatness: {} (mean t_A max/min ratio {ratio:.1} vs <= 3 required; bound deviates up to {:.0}% from linear vs <= 20% required)",
        if pass { "PASS" } else { "FAIL" },
        max_dev * 100.0
    );
    assert!(
        pass,
        "mean t_A ratio {ratio:.2} (requirement <= 3), bound deviation {:.1}% (requirement <= 20%): \
         both follow from the spectral shift of normalized random instances growing like sqrt(N), \
         which makes t_A and its bound scale like N^1.5 rather than stay flat/linear",
        max_dev * 100.0
    );
}

#[test]
fn criterion_05_trotter_convergence() {
    let steps = [1u32, 2, 4, 8, 16, 32];
    let mut monotone_failures = Vec::new();
    let mut ratio_failures = Vec::new();
    let mut total = 0usize;
    for n in [2usize, 3] {
        for sample in 0..10u64 {
            let mut stream = UniformStream::from_seed(derive_subseed(9005, n as u64, sample));
            let problem = random_dense_problem(n, &mut stream);
            let report = trotter_convergence(&problem, &full_zz_source(n), 1.0, &steps).unwrap();
            total += 1;
            let d: Vec<f64> = report.distances.iter().map(|&(_, x)| x).collect();
            for w in 0..d.len() - 1 {
                if d[w] < 0.1 && d[w + 1] >= d[w] {
                    monotone_failures.push((n, sample, steps[w], d[w], d[w + 1]));
                    break;
                }
            }
            // Final decade of step counts: {4, 8, 16, 32}.
            for w in 2..d.len() - 1 {
                let r = d[w] / d[w + 1];
                if !(1.5..=2.5).contains(&r) {
                    ratio_failures.push((n, sample, steps[w], r));
                    break;
                }
            }
        }
    }
    let pass = monotone_failures.is_empty() && ratio_failures.is_empty();
    println!(
        "criterion 05 trotter convergence: {} ({} of {total} instances break monotone decrease, {} break the doubling-ratio window; first breaks: {:?} / {:?})",
        if pass { "PASS" } else { "FAIL" },
        monotone_failures.len(),
        ratio_failures.len(),
        monotone_failures.first(),
        ratio_failures.first()
    );
    assert!(
        pass,
        "{} monotone and {} ratio violations out of {total}: every 2-qubit instance compiles \
         exactly (all blocks commute), so its distances sit at the roundoff floor (~1e-15) where \
         neither monotone decrease nor a ~2x doubling ratio is observable; 3-qubit instances \
         converge first-order as required. Example violations: {:?} {:?}",
        monotone_failures.len(),
        ratio_failures.len(),
        monotone_failures.first(),
        ratio_failures.first()
    );
}

#[test]
fn criterion_06_commuting_exactness() {
    let mut failures = Vec::new();
    let mut total = 0usize;
    let mut worst_by_n = Vec::new();
    for (n, count) in [(2usize, 7u64), (3, 7), (4, 6)] {
        let mut worst = 0.0f64;
        for sample in 0..count {
            let mut stream = UniformStream::from_seed(derive_subseed(9006, n as u64, sample));
            let problem = random_zz_problem(n, &mut stream);
            let report = trotter_convergence(&problem, &full_zz_source(n), 1.0, &[1]).unwrap();
            let d = report.distances[0].1;
            total += 1;
            worst = worst.max(d);
            if d > 1e-8 {
                failures.push((n, sample, d));
            }
        }
        worst_by_n.push((n, worst));
    }
    let pass = failures.is_empty();
    println!(
        "criterion 06 commuting exactness: {} ({} of {total} instances exceed 1e-8 at one step; worst distance by size: {:?})",
        if pass { "PASS" } else { "FAIL" },
        failures.len(),
        worst_by_n
    );
    assert!(
        pass,
        "{} of {total} pure-ZZ instances verify above 1e-8 (worst by size: {worst_by_n:?}): \
         for 3+ qubits the diagonal gauge shift forces x/y-axis blocks concentrated on single \
         qubits, and their pairwise cancellation is broken by the source couplings among the \
         remaining qubits; 2-qubit instances are exact as required",
        failures.len()
    );
}

#[test]
fn criterion_07_rotation_round_trip() {
    let mut stream = UniformStream::from_seed(9007);
    let mut worst = 0.0f64;
    let check = |gamma: Vec3, worst: &mut f64| {
        let params = gamma_to_rotation(gamma).unwrap();
        let back = rotation_to_gamma(&params);
        let err = vec3::norm([back[0] - gamma[0], back[1] - gamma[1], back[2] - gamma[2]]);
        *worst = worst.max(err);
    };
    for _ in 0..10_000 {
        check(random_unit_vec3(&mut stream), &mut worst);
    }
    check([0.0, 0.0, 1.0], &mut worst);
    check([0.0, 0.0, -1.0], &mut worst);
    let pass = worst <= 1e-12;
    println!(
        "criterion 07 rotation round-trip: {} (max |forward(inverse(g)) - g| = {:.3e} over 10002 vectors)",
        if pass { "PASS" } else { "FAIL" },
        worst
    );
    assert!(pass, "round-trip error {worst:e} exceeds 1e-12");
}

#[test]
fn criterion_08_padding_residual_identity() {
    let mut stream = UniformStream::from_seed(9008);
    let mut worst = 0.0f64;
    let mut vectors = 0usize;
    for n in 2..=10usize {
        for _ in 0..12 {
            let v = random_unit_block_vector(n, &mut stream);
            let m = v.max_block_norm_sqr().sqrt();
            let terms = decompose_eigenvector(1.0, &v, 0).unwrap();
            vectors += 1;
            // Recover ε_i per step from the plus-sign term: ε = m·γ₊ − v.
            let eps_per_step: Vec<Vec<Vec3>> = terms
                .iter()
                .filter(|t| t.sign == Sign::Plus)
                .map(|t| {
                    (0..n)
                        .map(|i| {
                            let g = t.gamma.block(i);
                            let vi = v.block(i);
                            [m * g[0] - vi[0], m * g[1] - vi[1], m * g[2] - vi[2]]
                        })
                        .collect()
                })
                .collect();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for a in 0..3 {
                        for b in 0..3 {
                            let sum: f64 =
                                eps_per_step.iter().map(|eps| eps[i][a] * eps[j][b]).sum();
                            worst = worst.max(sum.abs());
                        }
                    }
                }
            }
        }
    }
    let pass = worst <= 1e-10;
    println!(
        "criterion 08 padding residual: {} (max off-block residual {:.3e} over {vectors} eigenvectors, N = 2..10)",
        if pass { "PASS" } else { "FAIL" },
        worst
    );
    assert!(pass, "padding residual {worst:e} exceeds 1e-10");
}

#[test]
fn criterion_09_effective_hamiltonian_equivalence() {
    let mut stream = UniformStream::from_seed(9009);
    let mut worst = 0.0f64;
    let mut blocks = 0usize;
    for n in [2usize, 3] {
        for _ in 0..50 {
            let mut source = TwoBodyHamiltonian::new(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    source
                        .add_coupling(i, j, PauliAxis::Z, PauliAxis::Z, stream.next_symmetric())
                        .unwrap();
                }
            }
            let rotations: Vec<SqgParams> = (0..n)
                .map(|_| SqgParams {
                    angle: (stream.next_symmetric() + 1.0) * core::f64::consts::PI / 2.0,
                    axis: random_unit_vec3(&mut stream),
                })
                .collect();
            let mut gamma = BlockVector::zeros(n);
            for (q, r) in rotations.iter().enumerate() {
                gamma.set_block(q, rotation_to_gamma(r));
            }
            let from_couplings =
                hamiltonian_matrix(&daqc_core::effective_couplings(&source, &gamma).unwrap())
                    .unwrap();

            let u = single_qubit_product_matrix(&rotations).unwrap();
            let conjugated = u
                .mul(&hamiltonian_matrix(&source).unwrap())
                .mul(&u.adjoint());
            let dev = from_couplings.max_abs_diff(&conjugated);
            worst = worst.max(dev);
            blocks += 1;
        }
    }
    let pass = worst <= 1e-12;
    println!(
        "criterion 09 effective-Hamiltonian equivalence: {} (max dense deviation {:.3e} over {blocks} blocks)",
        if pass { "PASS" } else { "FAIL" },
        worst
    );
    assert!(
        pass,
        "effective-Hamiltonian deviation {worst:e} exceeds 1e-12"
    );
}

#[test]
fn criterion_10_compile_time_at_n50() {
    let n = 50;
    let mut stream = UniformStream::from_seed(9010);
    let problem = random_dense_problem(n, &mut stream);
    let source = full_zz_source(n);
    let start = Instant::now();
    let schedule = compile_schedule(&problem, &source, 1.0, 0.0).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let pass = elapsed < 30.0;
    println!(
        "criterion 10 compile time: {} (N = 50 compiled {} blocks in {elapsed:.2} s, budget 30 s)",
        if pass { "PASS" } else { "FAIL" },
        schedule.blocks.len()
    );
    assert!(pass, "N=50 compile took {elapsed:.2} s (budget 30 s)");
}
