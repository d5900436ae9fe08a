//! Independent brute-force oracle for the delta-coupling model
//!
//! `udw-core` computes detector states through closed-form Gaussian
//! overlaps. This crate re-derives the same quantities along two
//! deliberately different routes so the closed forms can be checked
//! end to end:
//!
//! * [`quadrature`] evaluates the field-correlation integrals by
//!   adaptive panel Gauss–Legendre quadrature instead of their closed
//!   forms;
//! * [`match_amplitudes`] represents the four coupling slots by
//!   discrete bosonic modes with the same Gram matrix, and [`brute_h`]
//!   evaluates operator products on an explicitly truncated Fock space
//!   with adaptive cutoff doubling — no Gaussian identity enters.
//!
//! The only knowledge shared with `udw-core` is the definition of the
//! correlation integrals and the slot Gram matrix they induce.

mod brute;
mod config;
mod error;
pub mod quadrature;

pub use brute::{brute_h, brute_sequence_vev, CONVERGENCE_TOL};
pub use config::{
    gram_target, match_amplitudes, match_amplitudes_for, match_amplitudes_for_context,
    match_amplitudes_with_cutoff, ModeConfig, DEFAULT_CUTOFF, GRAM_PSD_TOL, MODE_KEEP_TOL,
    TAIL_BOUND,
};
pub use error::{FockError, Result};
