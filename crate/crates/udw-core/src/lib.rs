//! Exact entanglement harvesting for delta-coupled detector pairs
//!
//! Two gapped two-level detectors sit at the same point inside a
//! hard-sphere spatial profile of unit radius and couple to a massless
//! scalar field vacuum at sharply defined instants. Because each
//! coupling acts as a controlled field displacement, the model is
//! exactly solvable: the joint detector state after any supported
//! coupling schedule reduces to Gaussian vacuum overlaps with closed
//! forms in the two correlation integrals [`i_s`] and [`i_c`].
//!
//! The crate provides
//!
//! * the correlation integrals and the commutator angle [`theta`];
//! * validated coupling schedules ([`DeltaSchedule`]) for two, three,
//!   or four delta couplings with derived interaction [`Pattern`]s;
//! * the Gaussian kernel of the canonical eight-operator product
//!   ([`k_function`], [`h_function`]);
//! * the symbolic cosh/sinh expansion of the evolved state
//!   ([`evolved_coefficients`]) and the assembled reduced state
//!   ([`AssembledSchedule`], [`rho_ab`]);
//! * the X-shaped joint state ([`XState`]) with closed-form
//!   partial-transpose eigenvalues and [`negativity_of`].
//!
//! The central physical facts encoded here: a detector whose single
//! coupling comes last feeds the other detector through an
//! entanglement-breaking channel, so such schedules can never harvest
//! entanglement; and harvesting requires at least two of the three
//! relevant field-commutator angles to be non-zero, which confines it
//! to coupling separations below twice the light-crossing time of the
//! profile.

mod engine;
mod error;
mod kernel;
mod schedule;
mod special;
mod xstate;

pub use engine::{
    evolved_coefficients, negativity_of, rho_ab, AssembledSchedule, EvolvedCoefficients,
    EvolvedTerm,
};
pub use error::{Result, UdwError};
pub use kernel::{h_function, k_function, theta, vacuum_overlap, KContext, SignPattern};
pub use schedule::{CouplingSlot, DeltaEvent, DeltaSchedule, Detector, Pattern};
pub use special::{i_c, i_s};
pub use xstate::{XState, BLOCK_TOL, TRACE_TOL};

#[doc(hidden)]
pub use kernel::h_function_with_f;
