//! Finite-dimensional bench for detector-pair separability theorems.
//!
//! Interactions here are *simple-generated*: unitaries `exp(−i m⊗X)` whose
//! generator is a single tensor product of a target observable `m` and a
//! source observable `X`. Such a unitary is a controlled unitary over the
//! spectrum of `X`, and the channel it induces from the source onto a
//! freshly prepared target is measure-and-prepare, hence entanglement
//! breaking. This crate builds those objects explicitly and verifies the
//! structural consequences:
//!
//! - a detector that couples only once can never end up entangled with the
//!   other detector ([`eb_witness`], [`eb_sequence_suite`]);
//! - three couplings (two to A, one to B) leave the detectors separable
//!   whenever at least two of the three source-observable commutators
//!   vanish ([`two_commutator_suite`]);
//! - with a two-qubit source and one coupling per source qubit for A, no
//!   entanglement reaches the detectors ([`twoqubit_source_nogo`]), while
//!   coupling everything to the same qubit re-enables it
//!   ([`same_qubit_contrast`]);
//! - exact CNOT circuits show a single vanishing commutator is harmless
//!   ([`ToyCircuit`]).

mod coupling;
mod error;
mod random;
mod sequence;
mod toys;
mod witness;

pub use coupling::{
    channel_output, channel_output_by_evolution, controlled_decomposition, embed_and_exponentiate,
    Branch, SimpleCoupling, Target, DEGENERACY_TOL,
};
pub use error::{NogoError, Result};
pub use random::{derive_trial_seed, random_density, random_hermitian, random_pure, trial_rng};
pub use sequence::{
    commutator_profile, run_sequence, CommutatorProfile, InteractionSequence, VANISHING_TOL,
};
pub use toys::{
    cnot_coupling, cnot_coupling_on_qubit, embed_on_qubit, xbasis_observable, zbasis_observable,
    ToyCircuit, ToyOutcome,
};
pub use witness::{
    eb_coupling_suite, eb_sequence_suite, eb_witness, same_qubit_contrast, two_commutator_suite,
    two_term_witness, twoqubit_source_nogo, twoqubit_source_suite, SuiteReport, SEPARABLE_TOL,
};
