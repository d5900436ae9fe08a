//! Density matrices: Hermitian, unit-trace, positive-semidefinite states
//! over an explicit tensor factorization.

use num_complex::Complex64;

use crate::error::{QmatError, Result};
use crate::hermitian::{HermitianOp, HERMITICITY_TOL};
use crate::matrix::ComplexMatrix;
use crate::ops::herm_eigvalsh;

/// Tolerance on `|Tr ρ − 1|` accepted at construction.
pub const TRACE_TOL: f64 = 1e-12;

/// Lower bound accepted for the smallest eigenvalue of a state.
///
/// Exact closed-form states routinely carry eigenvalues like `−3e-17` from
/// rounding; rejecting them would break valid pipelines, so the check is
/// `λ_min ≥ −1e-10`.
pub const PSD_TOL: f64 = -1e-10;

/// A verified quantum state: Hermitian within 1e-12, unit trace within
/// 1e-12, and positive semidefinite within [`PSD_TOL`], carrying the list
/// of subsystem dimensions whose product is the total dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    matrix: ComplexMatrix,
    subsystem_dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates all three state invariants and the factorization.
    pub fn new(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Result<Self> {
        if subsystem_dims.is_empty() || subsystem_dims.iter().any(|&d| d == 0) {
            return Err(QmatError::Argument(
                "subsystem dimensions must be positive and nonempty".into(),
            ));
        }
        let total: usize = subsystem_dims.iter().product();
        if !matrix.is_square() || matrix.rows() != total {
            return Err(QmatError::Dimension(format!(
                "state is {}x{} but subsystem dims multiply to {total}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(QmatError::NotDensity(format!(
                "Hermiticity deviation {dev:.3e} exceeds {HERMITICITY_TOL:.1e}"
            )));
        }
        let trace = matrix.trace()?;
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(QmatError::NotDensity(format!(
                "trace {} deviates from 1 beyond {TRACE_TOL:.1e}",
                trace
            )));
        }
        let herm = HermitianOp::with_tolerance(matrix, HERMITICITY_TOL)?;
        let eigenvalues = herm_eigvalsh(&herm)?;
        let min_eig = eigenvalues.first().copied().unwrap_or(0.0);
        if min_eig < PSD_TOL {
            return Err(QmatError::NotDensity(format!(
                "smallest eigenvalue {min_eig:.3e} below {PSD_TOL:.1e}"
            )));
        }
        Ok(Self {
            dim: total,
            matrix: herm.matrix().clone(),
            subsystem_dims,
        })
    }

    /// The projector `|ψ⟩⟨ψ|` onto a normalized pure state.
    pub fn pure(state: &[Complex64], subsystem_dims: Vec<usize>) -> Result<Self> {
        let norm_sqr: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-10 {
            return Err(QmatError::Argument(format!(
                "pure state norm² = {norm_sqr} is not 1"
            )));
        }
        let outer = ComplexMatrix::outer(state)?;
        // Renormalize the trace exactly so downstream checks at 1e-12 pass.
        let outer = outer.scale(Complex64::new(1.0 / norm_sqr, 0.0))?;
        Self::new(outer, subsystem_dims)
    }

    /// Total dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Dimensions of the tensor factors.
    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    /// Overlap `⟨ψ|ρ|ψ⟩` with a pure state, i.e. the fidelity against
    /// `|ψ⟩⟨ψ|`.
    pub fn pure_overlap(&self, state: &[Complex64]) -> Result<f64> {
        Ok(self.matrix.quadratic_form(state)?.re)
    }

    /// Reinterprets the same matrix under a different factorization of the
    /// same total dimension.
    pub fn with_subsystem_dims(&self, subsystem_dims: Vec<usize>) -> Result<Self> {
        let total: usize = subsystem_dims.iter().product();
        if total != self.dim {
            return Err(QmatError::Dimension(format!(
                "new subsystem dims multiply to {total}, state dimension is {}",
                self.dim
            )));
        }
        Ok(Self {
            dim: self.dim,
            matrix: self.matrix.clone(),
            subsystem_dims,
        })
    }
}
