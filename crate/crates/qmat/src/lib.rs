//! Minimal dense complex linear algebra for small quantum systems.
//!
//! The crate provides exactly the operations needed to manipulate
//! finite-dimensional states and observables up to a configurable dimension
//! cap (default 4096): Kronecker products, Hermitian eigendecomposition,
//! unitaries generated as `exp(−iH)`, partial trace and partial transpose,
//! and the negativity entanglement monotone. Storage is dense and row-major
//! throughout; all values are immutable after construction and every
//! operation is a pure function, so everything here is safe to call from
//! many threads at once.
//!
//! Construction-time invariants are enforced by the wrapper types:
//! [`HermitianOp`] checks `‖M − M†‖_max ≤ 1e-12` and [`DensityMatrix`]
//! additionally checks unit trace (±1e-12) and positive semidefiniteness
//! (smallest eigenvalue ≥ −1e-10).

mod density;
mod error;
mod hermitian;
mod matrix;
mod ops;

pub use density::{DensityMatrix, PSD_TOL, TRACE_TOL};
pub use error::{QmatError, Result};
pub use hermitian::{HermitianOp, HERMITICITY_TOL};
pub use matrix::ComplexMatrix;
pub use ops::{
    herm_eig, herm_eigvalsh, kron, kron_all, kron_with_cap, negativity, partial_trace,
    partial_transpose, partial_transpose_raw, unitary_from_generator, DEFAULT_DIM_CAP,
    EIG_RESIDUAL_TOL, UNITARITY_TOL,
};

pub use num_complex::Complex64;
