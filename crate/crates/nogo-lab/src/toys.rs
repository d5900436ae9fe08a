//! Exact CNOT circuits built entirely from simple-generated couplings.
//!
//! Three three-gate circuits produce a Bell pair on the detectors from a
//! single-qubit source even though one of the three source-observable
//! commutators vanishes (a different one in each circuit), showing that the
//! separability no-go needs *two* vanishing commutators. A fourth circuit
//! swaps a Bell pair from a two-qubit source onto the detectors with four
//! gates.

use num_complex::Complex64;
use qmat::{kron, negativity, partial_trace, ComplexMatrix, DensityMatrix, HermitianOp};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::coupling::{embed_and_exponentiate, SimpleCoupling, Target};
use crate::error::Result;
use crate::sequence::{commutator_profile, CommutatorProfile, InteractionSequence};

/// Qubit observable `2P₀ + P₁ = diag(2, 1)`: distinct integer eigenvalues on
/// the computational basis, chosen so that `exp(−iπ z⊗x)` with its
/// [`xbasis_observable`] partner is exactly a CNOT.
pub fn zbasis_observable() -> HermitianOp {
    let m = ComplexMatrix::from_rows(&[
        vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ])
    .expect("fixed 2x2 matrix");
    HermitianOp::new(m).expect("real diagonal matrix is Hermitian")
}

/// Qubit observable `2P₊ + 3P₋` with eigenvalues 2 and 3 on the `|±⟩` basis;
/// the flip side of the CNOT generator.
pub fn xbasis_observable() -> HermitianOp {
    let m = ComplexMatrix::from_rows(&[
        vec![Complex64::new(2.5, 0.0), Complex64::new(-0.5, 0.0)],
        vec![Complex64::new(-0.5, 0.0), Complex64::new(2.5, 0.0)],
    ])
    .expect("fixed 2x2 matrix");
    HermitianOp::new(m).expect("real symmetric matrix is Hermitian")
}

fn scaled_by_pi(op: &HermitianOp) -> HermitianOp {
    let m = op
        .matrix()
        .scale(Complex64::new(PI, 0.0))
        .expect("finite scale");
    HermitianOp::new(m).expect("scaling preserves Hermiticity")
}

/// Extends a single-qubit observable to a two-qubit source, acting on
/// `qubit` (0 or 1) and trivially on the other.
pub fn embed_on_qubit(op: &HermitianOp, qubit: usize) -> HermitianOp {
    assert!(qubit < 2, "source qubit index must be 0 or 1");
    assert_eq!(op.dim(), 2, "embedding expects a qubit observable");
    let id = ComplexMatrix::identity(2);
    let m = match qubit {
        0 => kron(op.matrix(), &id),
        _ => kron(&id, op.matrix()),
    }
    .expect("2x2 Kronecker factors");
    HermitianOp::new(m).expect("Kronecker product of Hermitians is Hermitian")
}

/// A coupling whose unitary is exactly a CNOT between the detector and a
/// single-qubit source. `source_is_control` picks which side controls.
pub fn cnot_coupling(target: Target, source_is_control: bool) -> SimpleCoupling {
    if source_is_control {
        SimpleCoupling::new(target, xbasis_observable(), scaled_by_pi(&zbasis_observable()))
    } else {
        SimpleCoupling::new(target, scaled_by_pi(&zbasis_observable()), xbasis_observable())
    }
}

/// [`cnot_coupling`] for a two-qubit source, coupling to source `qubit` only.
pub fn cnot_coupling_on_qubit(target: Target, source_is_control: bool, qubit: usize) -> SimpleCoupling {
    if source_is_control {
        SimpleCoupling::new(
            target,
            xbasis_observable(),
            embed_on_qubit(&scaled_by_pi(&zbasis_observable()), qubit),
        )
    } else {
        SimpleCoupling::new(
            target,
            scaled_by_pi(&zbasis_observable()),
            embed_on_qubit(&xbasis_observable(), qubit),
        )
    }
}

pub(crate) fn vec_kron(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

fn ket0() -> Vec<Complex64> {
    vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
}

fn ket_plus() -> Vec<Complex64> {
    vec![
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
    ]
}

/// `(|0⟩_A|0⟩_B + |1⟩_A|1⟩_B)/√2 ⊗ source`, laid out on the `A ⊗ S ⊗ B`
/// ordering.
fn ab_bell_with_source(source: &[Complex64]) -> Vec<Complex64> {
    let d_s = source.len();
    let mut v = vec![Complex64::new(0.0, 0.0); 2 * d_s * 2];
    let amp = Complex64::new(FRAC_1_SQRT_2, 0.0);
    for (s, &c) in source.iter().enumerate() {
        v[s * 2] = amp * c;
        v[2 * d_s + s * 2 + 1] = amp * c;
    }
    v
}

/// The four exactly-solvable CNOT circuits. The first three are named for
/// the single source-observable commutator that vanishes in them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToyCircuit {
    /// `[X_B1, X_A2] = 0`: gates B→S, S→A, A→S on `|0_A 0_S +_B⟩`.
    VanishingB1A2,
    /// `[X_B1, X_A1] = 0`: gates S→A, S→B, A→S on `|0_A +_S 0_B⟩`.
    VanishingB1A1,
    /// `[X_A1, X_A2] = 0`: gates S→A, B→S, S→A on `|0_A +_S +_B⟩`.
    VanishingA1A2,
    /// Four gates swapping a source Bell pair onto the detectors.
    FourGateSwap,
}

/// Result of running a toy circuit: overlap with the predicted final state,
/// detector-detector negativity, and (for three-gate circuits) the
/// commutator profile.
#[derive(Debug, Clone)]
pub struct ToyOutcome {
    /// `|⟨expected|final⟩|²`.
    pub fidelity: f64,
    /// Negativity of the final reduced detector pair.
    pub negativity: f64,
    /// Commutator profile for three-coupling circuits, `None` otherwise.
    pub profile: Option<CommutatorProfile>,
}

impl ToyCircuit {
    /// All circuits, in a fixed presentation order.
    pub const ALL: [ToyCircuit; 4] = [
        ToyCircuit::VanishingB1A2,
        ToyCircuit::VanishingB1A1,
        ToyCircuit::VanishingA1A2,
        ToyCircuit::FourGateSwap,
    ];

    /// Stable hyphenated name, used by the command-line interface.
    pub fn name(&self) -> &'static str {
        match self {
            ToyCircuit::VanishingB1A2 => "vanishing-b1a2",
            ToyCircuit::VanishingB1A1 => "vanishing-b1a1",
            ToyCircuit::VanishingA1A2 => "vanishing-a1a2",
            ToyCircuit::FourGateSwap => "four-gate-swap",
        }
    }

    /// Inverse of [`ToyCircuit::name`].
    pub fn from_name(name: &str) -> Option<ToyCircuit> {
        ToyCircuit::ALL.iter().copied().find(|c| c.name() == name)
    }

    /// `(d_A, d_S, d_B)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        match self {
            ToyCircuit::FourGateSwap => (2, 4, 2),
            _ => (2, 2, 2),
        }
    }

    /// The circuit's couplings as an interaction sequence.
    pub fn sequence(&self) -> InteractionSequence {
        let couplings = match self {
            ToyCircuit::VanishingB1A2 => vec![
                cnot_coupling(Target::B, false),
                cnot_coupling(Target::A, true),
                cnot_coupling(Target::A, false),
            ],
            ToyCircuit::VanishingB1A1 => vec![
                cnot_coupling(Target::A, true),
                cnot_coupling(Target::B, true),
                cnot_coupling(Target::A, false),
            ],
            ToyCircuit::VanishingA1A2 => vec![
                cnot_coupling(Target::A, true),
                cnot_coupling(Target::B, false),
                cnot_coupling(Target::A, true),
            ],
            ToyCircuit::FourGateSwap => vec![
                cnot_coupling_on_qubit(Target::A, true, 0),
                cnot_coupling_on_qubit(Target::B, true, 1),
                cnot_coupling_on_qubit(Target::A, false, 0),
                cnot_coupling_on_qubit(Target::B, false, 1),
            ],
        };
        InteractionSequence::new(couplings, self.dims()).expect("toy circuits are well formed")
    }

    /// The initial pure product state on `A ⊗ S ⊗ B`.
    pub fn initial_state(&self) -> Vec<Complex64> {
        let (a, s, b) = match self {
            ToyCircuit::VanishingB1A2 => (ket0(), ket0(), ket_plus()),
            ToyCircuit::VanishingB1A1 => (ket0(), ket_plus(), ket0()),
            ToyCircuit::VanishingA1A2 => (ket0(), ket_plus(), ket_plus()),
            ToyCircuit::FourGateSwap => {
                let mut phi = vec![Complex64::new(0.0, 0.0); 4];
                phi[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                phi[3] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                (ket0(), phi, ket0())
            }
        };
        vec_kron(&vec_kron(&a, &s), &b)
    }

    /// The predicted final pure state: a detector Bell pair times a
    /// decoupled source state.
    pub fn expected_state(&self) -> Vec<Complex64> {
        match self {
            ToyCircuit::VanishingB1A2 | ToyCircuit::VanishingB1A1 => ab_bell_with_source(&ket0()),
            ToyCircuit::VanishingA1A2 => ab_bell_with_source(&ket_plus()),
            ToyCircuit::FourGateSwap => {
                let mut s00 = vec![Complex64::new(0.0, 0.0); 4];
                s00[0] = Complex64::new(1.0, 0.0);
                ab_bell_with_source(&s00)
            }
        }
    }

    /// Evolves the initial state through the gates and compares with the
    /// prediction.
    pub fn run(&self) -> Result<ToyOutcome> {
        let seq = self.sequence();
        let mut state = self.initial_state();
        for c in seq.couplings() {
            let u = embed_and_exponentiate(c, seq.dims())?;
            state = u.apply(&state)?;
        }
        let overlap: Complex64 = self
            .expected_state()
            .iter()
            .zip(&state)
            .map(|(e, f)| e.conj() * f)
            .sum();
        let (d_a, d_s, d_b) = self.dims();
        let rho = DensityMatrix::pure(&state, vec![d_a, d_s, d_b])?;
        let ab = partial_trace(&rho, &[0, 2])?;
        let neg = negativity(&ab, 1)?;
        let profile = if seq.couplings().len() == 3 {
            Some(commutator_profile(&seq)?)
        } else {
            None
        };
        Ok(ToyOutcome {
            fidelity: overlap.norm_sqr(),
            negativity: neg,
            profile,
        })
    }
}
