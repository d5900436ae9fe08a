//! Randomized verification suites for the separability theorems: the
//! entanglement-breaking property of a detector's only coupling, the
//! two-vanishing-commutators no-go, and the two-qubit-source no-go —
//! together with contrast searches showing each hypothesis is needed.
//!
//! Every suite derives one RNG stream per trial from `(seed, trial)`, so
//! results are reproducible and independent of execution order; trials run
//! in parallel.

use num_complex::Complex64;
use qmat::{kron, negativity, partial_trace, ComplexMatrix, DensityMatrix, HermitianOp};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::coupling::{SimpleCoupling, Target};
use crate::error::{NogoError, Result};
use crate::random::{random_density, random_hermitian, random_pure, trial_rng};
use crate::sequence::{commutator_profile, run_sequence, InteractionSequence};
use crate::toys::{embed_on_qubit, vec_kron, xbasis_observable, zbasis_observable};

/// Negativity at or below this is treated as zero by the suites: the
/// theorems predict exact separability, and eigensolve noise stays orders
/// of magnitude below this line.
pub const SEPARABLE_TOL: f64 = 1e-10;

/// Outcome of a randomized suite: the largest negativity seen where the
/// theorems predict zero, and which trial produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    /// Stable suite name, used in machine-readable reports.
    pub suite: &'static str,
    /// Number of trials run.
    pub trials: u64,
    /// Base seed; trial `t` uses the stream derived from `(seed, t)`.
    pub seed: u64,
    /// Maximum negativity observed across all trials.
    pub max_violation: f64,
    /// Trial index attaining `max_violation`.
    pub worst_trial: u64,
}

impl SuiteReport {
    /// True when every trial stayed within [`SEPARABLE_TOL`].
    pub fn passed(&self) -> bool {
        self.max_violation <= SEPARABLE_TOL
    }
}

fn require_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(NogoError::Argument("trials must be at least 1".into()));
    }
    Ok(())
}

fn report_from(
    suite: &'static str,
    trials: u64,
    seed: u64,
    results: Vec<(u64, f64)>,
) -> SuiteReport {
    let (worst_trial, max_violation) = results
        .into_iter()
        .fold((0, f64::NEG_INFINITY), |acc, (t, v)| {
            if v > acc.1 {
                (t, v)
            } else {
                acc
            }
        });
    SuiteReport {
        suite,
        trials,
        seed,
        max_violation,
        worst_trial,
    }
}

/// `exp(−i m⊗X)` on the bare target⊗source pair, target first.
fn pair_unitary(m: &HermitianOp, x: &HermitianOp) -> Result<ComplexMatrix> {
    let gen = HermitianOp::new(kron(m.matrix(), x.matrix())?)?;
    Ok(qmat::unitary_from_generator(&gen)?)
}

/// Runs one channel trial: the source half of `|ψ⟩_{SR}` passes through the
/// coupling onto a fresh target, and the target:reference negativity of the
/// output is returned.
fn output_negativity(
    u_ts: &ComplexMatrix,
    d_t: usize,
    d_s: usize,
    d_r: usize,
    rho_t0: &DensityMatrix,
    psi_sr: &[Complex64],
) -> Result<f64> {
    let psi = DensityMatrix::pure(psi_sr, vec![d_s, d_r])?;
    let joint = kron(rho_t0.matrix(), psi.matrix())?;
    let u_full = kron(u_ts, &ComplexMatrix::identity(d_r))?;
    let evolved = u_full.matmul(&joint)?.matmul(&u_full.adjoint())?;
    let rho = DensityMatrix::new(evolved, vec![d_t, d_s, d_r])?;
    let out = partial_trace(&rho, &[0, 2])?;
    Ok(negativity(&out, 1)?)
}

/// Tests that a fixed coupling sends entanglement-carrying inputs to
/// separable outputs: per trial, the source is entangled with a reference
/// of dimension 2 or 3, the coupling is applied to a random target state,
/// and the target:reference negativity of the output is recorded. Returns
/// the maximum over trials, which the channel theorem pins at zero.
///
/// The target must be a qubit so that zero negativity is conclusive (the
/// partial-transpose criterion decides separability only on 2×2 and 2×3).
pub fn eb_witness(c: &SimpleCoupling, trials: u64, seed: u64) -> Result<f64> {
    require_trials(trials)?;
    if c.target_dim() != 2 {
        return Err(NogoError::Argument(format!(
            "witness needs a qubit target so the PPT check is conclusive, got dim {}",
            c.target_dim()
        )));
    }
    let d_s = c.source_dim();
    let u_ts = pair_unitary(c.m(), c.x())?;
    let results: Result<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let d_r = 2 + rng.random_range(0..2usize);
            let rho_t0 = random_density(&mut rng, 2);
            let psi = random_pure(&mut rng, d_s * d_r);
            output_negativity(&u_ts, 2, d_s, d_r, &rho_t0, &psi)
        })
        .collect();
    Ok(results?.into_iter().fold(0.0, f64::max))
}

/// The same protocol as [`eb_witness`] but for a two-term generator
/// `m₁⊗X₁ + m₂⊗X₂`. When `[X₁, X₂] ≠ 0` the induced channel generally
/// keeps input entanglement alive, so the returned maximum can be far from
/// zero — the contrast that makes the simple-generated hypothesis sharp.
pub fn two_term_witness(
    m1: &HermitianOp,
    x1: &HermitianOp,
    m2: &HermitianOp,
    x2: &HermitianOp,
    trials: u64,
    seed: u64,
) -> Result<f64> {
    require_trials(trials)?;
    if m1.dim() != 2 || m2.dim() != 2 {
        return Err(NogoError::Argument(
            "witness needs qubit target observables".into(),
        ));
    }
    if x1.dim() != x2.dim() {
        return Err(NogoError::Dimension(format!(
            "source observables disagree: {} vs {}",
            x1.dim(),
            x2.dim()
        )));
    }
    let d_s = x1.dim();
    let gen = HermitianOp::new(kron(m1.matrix(), x1.matrix())?.add(&kron(m2.matrix(), x2.matrix())?)?)?;
    let u_ts = qmat::unitary_from_generator(&gen)?;
    let results: Result<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let d_r = 2 + rng.random_range(0..2usize);
            let rho_t0 = random_density(&mut rng, 2);
            let psi = random_pure(&mut rng, d_s * d_r);
            output_negativity(&u_ts, 2, d_s, d_r, &rho_t0, &psi)
        })
        .collect();
    Ok(results?.into_iter().fold(0.0, f64::max))
}

/// Channel-level suite: each trial draws a fresh random coupling (random
/// Hermitian qubit observable times a random source observable with
/// `d_S ∈ {2,3,4}`) *and* fresh random inputs, then runs one
/// [`eb_witness`]-style trial. Output dimensions stay at 2×2 or 2×3 so the
/// zero-negativity verdict is conclusive.
pub fn eb_coupling_suite(trials: u64, seed: u64) -> Result<SuiteReport> {
    require_trials(trials)?;
    let results: Result<Vec<(u64, f64)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let d_s = [2, 3, 4][rng.random_range(0..3usize)];
            let m = random_hermitian(&mut rng, 2);
            let x = random_hermitian(&mut rng, d_s);
            let u_ts = pair_unitary(&m, &x)?;
            let d_r = 2 + rng.random_range(0..2usize);
            let rho_t0 = random_density(&mut rng, 2);
            let psi = random_pure(&mut rng, d_s * d_r);
            Ok((t, output_negativity(&u_ts, 2, d_s, d_r, &rho_t0, &psi)?))
        })
        .collect();
    Ok(report_from("eb", trials, seed, results?))
}

fn random_product_state<R: Rng + ?Sized>(rng: &mut R, d_s: usize) -> Result<DensityMatrix> {
    let a = random_density(rng, 2);
    let s = random_density(rng, d_s);
    let b = random_density(rng, 2);
    let m = kron(&kron(a.matrix(), s.matrix())?, b.matrix())?;
    Ok(DensityMatrix::new(m, vec![2, d_s, 2])?)
}

/// Sequence-level suite for the single-coupling theorem: each trial builds
/// a random sequence in which one detector couples exactly once, as the
/// final coupling, after 1–4 couplings to the other detector. Starting from
/// a random product state, the final detector-detector negativity must
/// vanish.
pub fn eb_sequence_suite(trials: u64, seed: u64) -> Result<SuiteReport> {
    require_trials(trials)?;
    let results: Result<Vec<(u64, f64)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let d_s = [2, 3, 4][rng.random_range(0..3usize)];
            let (last, other) = if rng.random::<bool>() {
                (Target::A, Target::B)
            } else {
                (Target::B, Target::A)
            };
            let n_earlier = rng.random_range(1..=4usize);
            let mut couplings = Vec::with_capacity(n_earlier + 1);
            for _ in 0..n_earlier {
                couplings.push(SimpleCoupling::new(
                    other,
                    random_hermitian(&mut rng, 2),
                    random_hermitian(&mut rng, d_s),
                ));
            }
            couplings.push(SimpleCoupling::new(
                last,
                random_hermitian(&mut rng, 2),
                random_hermitian(&mut rng, d_s),
            ));
            let seq = InteractionSequence::new(couplings, (2, d_s, 2))?;
            let rho0 = random_product_state(&mut rng, d_s)?;
            let (_, neg) = run_sequence(&seq, &rho0)?;
            Ok((t, neg))
        })
        .collect();
    Ok(report_from("eb_sequence", trials, seed, results?))
}

/// `V diag(d) V†` as a Hermitian observable.
fn conjugated_diag(v: &ComplexMatrix, diag: &[f64]) -> Result<HermitianOp> {
    let n = diag.len();
    let mut d = ComplexMatrix::zeros(n, n);
    for (i, &x) in diag.iter().enumerate() {
        d.set(i, i, Complex64::new(x, 0.0));
    }
    let m = v.matmul(&d)?.matmul(&v.adjoint())?;
    Ok(HermitianOp::new(m)?)
}

/// `V (H ⊕ K) V†` with `H` a 2×2 block and `K` filling the remaining
/// dimensions (absent when the space is two-dimensional).
fn conjugated_block(v: &ComplexMatrix, h: &ComplexMatrix, k: Option<&ComplexMatrix>) -> Result<HermitianOp> {
    let n = v.rows();
    let mut b = ComplexMatrix::zeros(n, n);
    for i in 0..2 {
        for j in 0..2 {
            b.set(i, j, h.get(i, j));
        }
    }
    if let Some(k) = k {
        for i in 0..k.rows() {
            for j in 0..k.cols() {
                b.set(2 + i, 2 + j, k.get(i, j));
            }
        }
    }
    let m = v.matmul(&b)?.matmul(&v.adjoint())?;
    Ok(HermitianOp::new(m)?)
}

fn random_eigenbasis<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<ComplexMatrix> {
    let h = random_hermitian(rng, dim);
    let (_, v) = qmat::herm_eig(&h)?;
    Ok(v)
}

/// Builds the three source observables with the requested commutation
/// structure. Even trials make all three commute (a shared random
/// eigenbasis); odd trials make exactly two of the three commutators
/// vanish, by giving the observable shared by the two vanishing pairs a
/// degenerate block spectrum and drawing the other two from its commutant
/// so that they fail to commute with each other.
fn draw_commuting_structure<R: Rng + ?Sized>(
    rng: &mut R,
    d_s: usize,
    all_vanish: bool,
) -> Result<([HermitianOp; 3], usize)> {
    let v = random_eigenbasis(rng, d_s)?;
    if all_vanish {
        let mut obs = Vec::with_capacity(3);
        for _ in 0..3 {
            let diag: Vec<f64> = (0..d_s).map(|_| rng.random_range(-2.0..2.0)).collect();
            obs.push(conjugated_diag(&v, &diag)?);
        }
        let mut it = obs.into_iter();
        Ok((
            [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()],
            3,
        ))
    } else {
        // Shared observable: μ on a 2-dim block, ν ≠ μ on the rest. Its
        // commutant is block diagonal, so the other two observables can
        // fail to commute with each other inside the degenerate block.
        let shared_role = rng.random_range(0..3usize);
        let mu = rng.random_range(-2.0..2.0);
        let nu = mu + 1.0 + rng.random_range(0.0..1.0);
        let mut diag = vec![mu; 2];
        diag.extend(std::iter::repeat(nu).take(d_s - 2));
        let shared = conjugated_diag(&v, &diag)?;

        let mut others = Vec::with_capacity(2);
        for _ in 0..2 {
            let h = random_hermitian(rng, 2);
            let k = if d_s > 2 {
                Some(random_hermitian(rng, d_s - 2))
            } else {
                None
            };
            others.push(conjugated_block(&v, h.matrix(), k.as_ref().map(|k| k.matrix()))?);
        }
        let o2 = others.pop().unwrap();
        let o1 = others.pop().unwrap();
        // Roles are (X_B1, X_A1, X_A2); the shared observable commutes with
        // both others, so exactly the two pairs containing it vanish.
        let obs = match shared_role {
            0 => [shared, o1, o2],
            1 => [o1, shared, o2],
            _ => [o1, o2, shared],
        };
        Ok((obs, 2))
    }
}

/// Suite for the two-vanishing-commutators theorem: three couplings (two
/// to A, one to B, in random order) whose source observables are
/// constructed so that at least two of the three pairwise commutators
/// vanish. For every such sequence the final detector pair must be
/// separable regardless of the interaction order or the target
/// observables.
pub fn two_commutator_suite(trials: u64, seed: u64) -> Result<SuiteReport> {
    require_trials(trials)?;
    let results: Result<Vec<(u64, f64)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let all_vanish = t % 2 == 0;
            // At d_S = 2 the degenerate-block construction collapses the
            // shared observable to a multiple of the identity — the
            // locality edge case, worth covering alongside d_S ∈ {3,4}.
            let d_s = [2, 3, 4][rng.random_range(0..3usize)];
            let ([x_b, x_a1, x_a2], expected_min) =
                draw_commuting_structure(&mut rng, d_s, all_vanish)?;

            let order = rng.random_range(0..3usize);
            let c_b = SimpleCoupling::new(Target::B, random_hermitian(&mut rng, 2), x_b);
            let c_a1 = SimpleCoupling::new(Target::A, random_hermitian(&mut rng, 2), x_a1);
            let c_a2 = SimpleCoupling::new(Target::A, random_hermitian(&mut rng, 2), x_a2);
            let couplings = match order {
                0 => vec![c_b, c_a1, c_a2],
                1 => vec![c_a1, c_b, c_a2],
                _ => vec![c_a1, c_a2, c_b],
            };
            let seq = InteractionSequence::new(couplings, (2, d_s, 2))?;
            let profile = commutator_profile(&seq)?;
            if profile.n_vanishing() < expected_min.min(2) {
                return Err(NogoError::Argument(format!(
                    "trial {t}: constructed instance has only {} vanishing commutators",
                    profile.n_vanishing()
                )));
            }
            let rho0 = random_product_state(&mut rng, d_s)?;
            let (_, neg) = run_sequence(&seq, &rho0)?;
            Ok((t, neg))
        })
        .collect();
    Ok(report_from("commutators", trials, seed, results?))
}

/// Suite for the two-qubit-source no-go: the source is a qubit pair, B
/// couples once to one of its qubits, and A couples once to each, all
/// through random observables in random order. Couplings on different
/// source qubits commute, so at least two of the three commutators vanish
/// automatically and the detectors must end separable.
pub fn twoqubit_source_suite(trials: u64, seed: u64) -> Result<SuiteReport> {
    require_trials(trials)?;
    let results: Result<Vec<(u64, f64)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let j_b = rng.random_range(0..2usize);
            let mut couplings = vec![
                SimpleCoupling::new(
                    Target::B,
                    random_hermitian(&mut rng, 2),
                    embed_on_qubit(&random_hermitian(&mut rng, 2), j_b),
                ),
                SimpleCoupling::new(
                    Target::A,
                    random_hermitian(&mut rng, 2),
                    embed_on_qubit(&random_hermitian(&mut rng, 2), 0),
                ),
                SimpleCoupling::new(
                    Target::A,
                    random_hermitian(&mut rng, 2),
                    embed_on_qubit(&random_hermitian(&mut rng, 2), 1),
                ),
            ];
            couplings.shuffle(&mut rng);
            let seq = InteractionSequence::new(couplings, (2, 4, 2))?;
            let rho0 = random_product_state(&mut rng, 4)?;
            let (_, neg) = run_sequence(&seq, &rho0)?;
            Ok((t, neg))
        })
        .collect();
    Ok(report_from("two_qubit_source", trials, seed, results?))
}

/// Maximum detector-detector negativity over [`twoqubit_source_suite`]
/// trials; the no-go pins it at zero.
pub fn twoqubit_source_nogo(trials: u64, seed: u64) -> Result<f64> {
    Ok(twoqubit_source_suite(trials, seed)?.max_violation)
}

/// Contrast search for the two-qubit-source no-go: all three couplings act
/// on the *same* source qubit through pairwise non-commuting observables,
/// which re-enables entanglement extraction. Trial 0 is a slightly
/// perturbed copy of the exact Bell-producing circuit, so the returned
/// maximum is far above the separability tolerance.
pub fn same_qubit_contrast(trials: u64, seed: u64) -> Result<f64> {
    require_trials(trials)?;
    let results: Result<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            if t == 0 {
                return perturbed_bell_instance(&mut rng);
            }
            let j = rng.random_range(0..2usize);
            let mut couplings = vec![
                SimpleCoupling::new(
                    Target::B,
                    random_hermitian(&mut rng, 2),
                    embed_on_qubit(&random_hermitian(&mut rng, 2), j),
                ),
                SimpleCoupling::new(
                    Target::A,
                    random_hermitian(&mut rng, 2),
                    embed_on_qubit(&random_hermitian(&mut rng, 2), j),
                ),
                SimpleCoupling::new(
                    Target::A,
                    random_hermitian(&mut rng, 2),
                    embed_on_qubit(&random_hermitian(&mut rng, 2), j),
                ),
            ];
            couplings.shuffle(&mut rng);
            let seq = InteractionSequence::new(couplings, (2, 4, 2))?;
            let rho0 = random_product_state(&mut rng, 4)?;
            let (_, neg) = run_sequence(&seq, &rho0)?;
            Ok(neg)
        })
        .collect();
    Ok(results?.into_iter().fold(0.0, f64::max))
}

/// The Bell-producing three-gate circuit moved onto qubit 0 of a two-qubit
/// source, with one controlling observable tilted by a small random
/// rotation so that all three source observables are pairwise
/// non-commuting. The output stays near the unperturbed Bell pair.
fn perturbed_bell_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<f64> {
    use std::f64::consts::PI;
    let theta = 0.05 + 0.1 * rng.random::<f64>();
    // diag(2,1) tilted in the x-z plane: spectrum {2,1} with rotated axes.
    let tilted = ComplexMatrix::from_rows(&[
        vec![
            Complex64::new(1.5 + 0.5 * theta.cos(), 0.0),
            Complex64::new(0.5 * theta.sin(), 0.0),
        ],
        vec![
            Complex64::new(0.5 * theta.sin(), 0.0),
            Complex64::new(1.5 - 0.5 * theta.cos(), 0.0),
        ],
    ])?;
    let tilted = HermitianOp::new(tilted.scale(Complex64::new(PI, 0.0))?)?;
    let z_pi = HermitianOp::new(
        zbasis_observable()
            .matrix()
            .scale(Complex64::new(PI, 0.0))?,
    )?;
    let couplings = vec![
        SimpleCoupling::new(Target::A, xbasis_observable(), embed_on_qubit(&z_pi, 0)),
        SimpleCoupling::new(Target::B, xbasis_observable(), embed_on_qubit(&tilted, 0)),
        SimpleCoupling::new(Target::A, z_pi, embed_on_qubit(&xbasis_observable(), 0)),
    ];
    let seq = InteractionSequence::new(couplings, (2, 4, 2))?;
    let profile = commutator_profile(&seq)?;
    if profile.n_vanishing() != 0 {
        return Err(NogoError::Argument(
            "perturbed instance unexpectedly has commuting observables".into(),
        ));
    }
    let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let ket0 = [one, zero];
    let plus = [half, half];
    let s = vec_kron(&plus, &ket0);
    let full = vec_kron(&vec_kron(&ket0, &s), &ket0);
    let rho0 = DensityMatrix::pure(&full, vec![2, 4, 2])?;
    let (_, neg) = run_sequence(&seq, &rho0)?;
    Ok(neg)
}
