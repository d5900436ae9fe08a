//! Hermitian operators with a construction-time self-adjointness check.

use num_complex::Complex64;

use crate::error::{QmatError, Result};
use crate::matrix::ComplexMatrix;

/// Tolerance on `‖M − M†‖_max` accepted by [`HermitianOp::new`].
pub const HERMITICITY_TOL: f64 = 1e-12;

/// A square complex matrix verified to be Hermitian at construction.
///
/// The stored matrix is the symmetrized `(M + M†)/2` of the input, so
/// downstream spectral routines see an exactly self-adjoint operand even
/// when the input carries rounding noise within the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    dim: usize,
    matrix: ComplexMatrix,
}

impl HermitianOp {
    /// Validates `‖M − M†‖_max ≤ 1e-12` and wraps the symmetrized matrix.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, HERMITICITY_TOL)
    }

    /// Same as [`HermitianOp::new`] with an explicit tolerance.
    pub fn with_tolerance(matrix: ComplexMatrix, tolerance: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(QmatError::Dimension(format!(
                "Hermitian operator must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > tolerance {
            return Err(QmatError::NotHermitian {
                deviation,
                tolerance,
            });
        }
        let n = matrix.rows();
        let mut sym = matrix;
        for i in 0..n {
            for j in 0..n {
                if j < i {
                    continue;
                }
                let avg = 0.5 * (sym.get(i, j) + sym.get(j, i).conj());
                sym.set(i, j, avg);
                sym.set(j, i, avg.conj());
            }
        }
        for i in 0..n {
            let d = sym.get(i, i);
            sym.set(i, i, Complex64::new(d.re, 0.0));
        }
        Ok(Self {
            dim: n,
            matrix: sym,
        })
    }

    /// Builds the zero operator of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            matrix: ComplexMatrix::zeros(dim, dim),
        }
    }

    /// Operator dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The symmetrized matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn accepts_hermitian_rejects_skew() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, -0.25)],
            vec![c(0.5, 0.25), c(-2.0, 0.0)],
        ])
        .unwrap();
        assert!(HermitianOp::new(h).is_ok());

        let skew = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(-1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let err = HermitianOp::new(skew).unwrap_err();
        assert!(matches!(err, QmatError::NotHermitian { .. }));
    }

    #[test]
    fn symmetrization_clears_rounding_noise() {
        let eps = 1e-13;
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, eps), c(0.5, 0.0)],
            vec![c(0.5, eps), c(0.0, 0.0)],
        ])
        .unwrap();
        let h = HermitianOp::new(m).unwrap();
        assert_eq!(h.matrix().hermiticity_deviation(), 0.0);
        assert_eq!(h.matrix().get(0, 0).im, 0.0);
    }
}
