//! Operations on complex matrices: Kronecker products, Hermitian
//! eigendecomposition, matrix exponentials of generators, partial trace and
//! partial transpose, and the negativity entanglement monotone.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{QmatError, Result};
use crate::hermitian::HermitianOp;
use crate::matrix::ComplexMatrix;

/// Default cap on the dimension of any matrix produced by [`kron`].
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Relative residual tolerance of [`herm_eig`]: `‖H V − V Λ‖_max ≤ tol·‖H‖`.
pub const EIG_RESIDUAL_TOL: f64 = 1e-10;

/// Tolerance on `‖U U† − 1‖_max` for unitaries built by
/// [`unitary_from_generator`].
pub const UNITARITY_TOL: f64 = 1e-10;

/// Kronecker product `a ⊗ b` with the default dimension cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_cap(a, b, DEFAULT_DIM_CAP)
}

/// Kronecker product `a ⊗ b`; fails if either output dimension exceeds
/// `cap`.
pub fn kron_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    if rows > cap || cols > cap {
        return Err(QmatError::Dimension(format!(
            "Kronecker product dimension {rows}x{cols} exceeds cap {cap}"
        )));
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all(factors: &[&ComplexMatrix]) -> Result<ComplexMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| QmatError::Argument("kron_all needs at least one factor".into()))?;
    let mut acc = (*first).clone();
    for f in rest {
        acc = kron(&acc, f)?;
    }
    Ok(acc)
}

/// Eigendecomposition of a Hermitian operator.
///
/// Returns the real eigenvalues in ascending order and the matrix whose
/// columns are the corresponding orthonormal eigenvectors, so that
/// `H = V Λ V†`. The backend is a Hermitian-specialized solve
/// (tridiagonalization followed by QR iterations); results satisfy
/// `‖H V − V Λ‖_max ≤ 1e-10 ‖H‖` and `‖V† V − 1‖_max ≤ 1e-10`.
pub fn herm_eig(h: &HermitianOp) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = h.dim();
    let m = h.matrix();
    let na = DMatrix::from_fn(n, n, |i, j| m.get(i, j));
    let eig = nalgebra::linalg::SymmetricEigen::try_new(na, f64::EPSILON, 10_000).ok_or_else(
        || {
            QmatError::Numerical(format!(
                "Hermitian eigensolve failed to converge (dim {n}, ‖H‖_max = {:.3e})",
                m.max_abs()
            ))
        },
    )?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, eig.eigenvectors[(row, k)]);
        }
    }
    vectors.check_finite()?;
    Ok((values, vectors))
}

/// Eigenvalues only, ascending.
pub fn herm_eigvalsh(h: &HermitianOp) -> Result<Vec<f64>> {
    herm_eig(h).map(|(values, _)| values)
}

/// The unitary `exp(−iH)` of a Hermitian generator, computed through the
/// eigendecomposition `H = V Λ V†` as `V exp(−iΛ) V†` (never by a power
/// series).
pub fn unitary_from_generator(h: &HermitianOp) -> Result<ComplexMatrix> {
    let n = h.dim();
    let (values, v) = herm_eig(h)?;
    // V · diag(e^{−iλ}) · V†, assembled without an extra matmul pass.
    let vdag = v.adjoint();
    let mut scaled = ComplexMatrix::zeros(n, n);
    for row in 0..n {
        for col in 0..n {
            let phase = Complex64::from_polar(1.0, -values[col]);
            scaled.set(row, col, v.get(row, col) * phase);
        }
    }
    scaled.matmul(&vdag)
}

/// Partial trace over all subsystems *not* listed in `keep`.
///
/// `keep` must be a nonempty, duplicate-free set of subsystem indices into
/// `rho.subsystem_dims()`; the result's subsystems appear in ascending
/// index order. The trace is preserved to within 1e-12 by construction.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.subsystem_dims();
    let n_sub = dims.len();
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() {
        return Err(QmatError::Argument("duplicate subsystem index in keep".into()));
    }
    if keep_sorted.is_empty() {
        return Err(QmatError::Argument("keep set must be nonempty".into()));
    }
    if keep_sorted.iter().any(|&k| k >= n_sub) {
        return Err(QmatError::Argument(format!(
            "keep index out of range for {n_sub} subsystems"
        )));
    }

    let traced: Vec<usize> = (0..n_sub).filter(|k| !keep_sorted.contains(k)).collect();
    let kept_dims: Vec<usize> = keep_sorted.iter().map(|&k| dims[k]).collect();
    let keep_dim: usize = kept_dims.iter().product();
    let trace_dim: usize = traced.iter().map(|&k| dims[k]).product();

    // Row-major strides of each subsystem index in the full Hilbert space.
    let mut strides = vec![1usize; n_sub];
    for k in (0..n_sub.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }

    let offset_of = |indices: &[usize], subsystems: &[usize]| -> usize {
        subsystems
            .iter()
            .zip(indices)
            .map(|(&s, &i)| i * strides[s])
            .sum()
    };
    let unrank = |mut r: usize, sub_dims: &[usize]| -> Vec<usize> {
        let mut idx = vec![0usize; sub_dims.len()];
        for k in (0..sub_dims.len()).rev() {
            idx[k] = r % sub_dims[k];
            r /= sub_dims[k];
        }
        idx
    };

    let full = rho.matrix();
    let mut out = ComplexMatrix::zeros(keep_dim, keep_dim);
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    for i in 0..keep_dim {
        let i_idx = unrank(i, &kept_dims);
        let i_off = offset_of(&i_idx, &keep_sorted);
        for j in 0..keep_dim {
            let j_idx = unrank(j, &kept_dims);
            let j_off = offset_of(&j_idx, &keep_sorted);
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..trace_dim {
                let t_idx = unrank(t, &traced_dims);
                let t_off = offset_of(&t_idx, &traced);
                acc += full.get(i_off + t_off, j_off + t_off);
            }
            out.set(i, j, acc);
        }
    }
    DensityMatrix::new(out, kept_dims)
}

/// Transposes the single subsystem `subsystem` of `rho`, leaving the others
/// untouched.
///
/// The result is Hermitian whenever the input is, and applying the
/// operation twice returns the input exactly; it is generally *not*
/// positive semidefinite, which is the point of the PPT criterion.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<ComplexMatrix> {
    let dims = rho.subsystem_dims();
    partial_transpose_raw(rho.matrix(), dims, subsystem)
}

/// [`partial_transpose`] on a raw matrix with explicit subsystem
/// dimensions.
pub fn partial_transpose_raw(
    m: &ComplexMatrix,
    dims: &[usize],
    subsystem: usize,
) -> Result<ComplexMatrix> {
    if subsystem >= dims.len() {
        return Err(QmatError::Argument(format!(
            "subsystem {subsystem} out of range for {} subsystems",
            dims.len()
        )));
    }
    let total: usize = dims.iter().product();
    if m.rows() != total || m.cols() != total {
        return Err(QmatError::Dimension(format!(
            "matrix is {}x{} but subsystem dims multiply to {total}",
            m.rows(),
            m.cols()
        )));
    }
    let left: usize = dims[..subsystem].iter().product();
    let mid = dims[subsystem];
    let right: usize = dims[subsystem + 1..].iter().product();

    let mut out = ComplexMatrix::zeros(total, total);
    for la in 0..left {
        for lb in 0..left {
            for ma in 0..mid {
                for mb in 0..mid {
                    for ra in 0..right {
                        for rb in 0..right {
                            let src_row = (la * mid + ma) * right + ra;
                            let src_col = (lb * mid + mb) * right + rb;
                            // Swap the middle-subsystem indices.
                            let dst_row = (la * mid + mb) * right + ra;
                            let dst_col = (lb * mid + ma) * right + rb;
                            out.set(dst_row, dst_col, m.get(src_row, src_col));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Negativity `N(ρ) = −Σ_i min(E_i, 0)` over the eigenvalues `E_i` of the
/// partial transpose of `rho` on `subsystem`. Always ≥ 0; zero exactly on
/// separable states when the two parties have dimensions 2×2 or 2×3.
pub fn negativity(rho: &DensityMatrix, subsystem: usize) -> Result<f64> {
    let pt = partial_transpose(rho, subsystem)?;
    let h = HermitianOp::new(pt)?;
    let values = herm_eigvalsh(&h)?;
    Ok(-values.iter().filter(|&&e| e < 0.0).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap()
    }

    fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ])
        .unwrap()
    }

    fn bell_phi_plus() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
        DensityMatrix::pure(&v, vec![2, 2]).unwrap()
    }

    #[test]
    fn kron_identity_and_diagonal() {
        let i2 = ComplexMatrix::identity(2);
        let k = kron(&i2, &i2).unwrap();
        assert_eq!(k, ComplexMatrix::identity(4));

        let d1 = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let d2 = ComplexMatrix::from_rows(&[
            vec![c(3.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(4.0, 0.0)],
        ])
        .unwrap();
        let k = kron(&d1, &d2).unwrap();
        let expect = [3.0, 4.0, 6.0, 8.0];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(k.get(i, i), c(*e, 0.0));
        }
    }

    #[test]
    fn kron_sigma_x_pair_flips_both_qubits() {
        let xx = kron(&sigma_x(), &sigma_x()).unwrap();
        let ket00 = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let out = xx.apply(&ket00).unwrap();
        assert_eq!(out, vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn kron_respects_dimension_cap() {
        let big = ComplexMatrix::identity(100);
        let err = kron_with_cap(&big, &big, 4096).unwrap_err();
        assert!(matches!(err, QmatError::Dimension(_)));
    }

    #[test]
    fn herm_eig_pauli_spectra() {
        let hz = HermitianOp::new(sigma_z()).unwrap();
        let (vals, _) = herm_eig(&hz).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);

        let hx = HermitianOp::new(sigma_x()).unwrap();
        let (vals, vecs) = herm_eig(&hx).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        // Ground eigenvector of σx is |−⟩ up to phase.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let minus = ComplexMatrix::from_vec(2, 1, vec![c(s, 0.0), c(-s, 0.0)]).unwrap();
        let got = ComplexMatrix::from_vec(2, 1, vec![vecs.get(0, 0), vecs.get(1, 0)]).unwrap();
        assert!(minus.phase_aligned_max_diff(&got).unwrap() < 1e-12);
    }

    #[test]
    fn unitary_from_zero_generator_is_identity() {
        let u = unitary_from_generator(&HermitianOp::zero(3)).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() < 1e-15);
    }

    #[test]
    fn unitary_from_half_pi_sigma_x() {
        // exp(−i (π/2) σx) = −i σx.
        let gen = sigma_x()
            .scale(c(std::f64::consts::FRAC_PI_2, 0.0))
            .unwrap();
        let u = unitary_from_generator(&HermitianOp::new(gen).unwrap()).unwrap();
        let expect = sigma_x().scale(c(0.0, -1.0)).unwrap();
        assert!(u.max_abs_diff(&expect).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_recovers_factor() {
        let rho_a = DensityMatrix::new(
            ComplexMatrix::from_rows(&[
                vec![c(0.7, 0.0), c(0.1, 0.2)],
                vec![c(0.1, -0.2), c(0.3, 0.0)],
            ])
            .unwrap(),
            vec![2],
        )
        .unwrap();
        let rho_s = DensityMatrix::new(
            ComplexMatrix::from_rows(&[
                vec![c(0.5, 0.0), c(0.0, 0.0)],
                vec![c(0.0, 0.0), c(0.5, 0.0)],
            ])
            .unwrap(),
            vec![2],
        )
        .unwrap();
        let joint = DensityMatrix::new(
            kron(rho_a.matrix(), rho_s.matrix()).unwrap(),
            vec![2, 2],
        )
        .unwrap();
        let back = partial_trace(&joint, &[0]).unwrap();
        assert!(back.matrix().max_abs_diff(rho_a.matrix()).unwrap() < 1e-14);
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let reduced = partial_trace(&bell_phi_plus(), &[0]).unwrap();
        let half = ComplexMatrix::identity(2).scale(c(0.5, 0.0)).unwrap();
        assert!(reduced.matrix().max_abs_diff(&half).unwrap() < 1e-14);
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let bell = bell_phi_plus();
        let once = partial_transpose(&bell, 1).unwrap();
        let back =
            partial_transpose_raw(&once, bell.subsystem_dims(), 1).unwrap();
        assert_eq!(back.max_abs_diff(bell.matrix()).unwrap(), 0.0);
        assert!(once.hermiticity_deviation() < 1e-15);
    }

    #[test]
    fn bell_state_partial_transpose_has_minus_half_eigenvalue() {
        let pt = partial_transpose(&bell_phi_plus(), 1).unwrap();
        let vals = herm_eigvalsh(&HermitianOp::new(pt).unwrap()).unwrap();
        assert!((vals[0] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn bell_negativity_is_half_and_mixed_is_zero() {
        assert!((negativity(&bell_phi_plus(), 1).unwrap() - 0.5).abs() < 1e-12);

        let mixed = DensityMatrix::new(
            ComplexMatrix::identity(4).scale(c(0.25, 0.0)).unwrap(),
            vec![2, 2],
        )
        .unwrap();
        assert!(negativity(&mixed, 1).unwrap() < 1e-14);
    }

    #[test]
    fn bell_with_spectator_still_has_half_negativity() {
        // 1/√2(|00⟩+|11⟩)_AB ⊗ |0⟩_S, traced down to AB.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![c(0.0, 0.0); 8];
        v[0] = c(s, 0.0); // |0_A 0_B 0_S⟩
        v[6] = c(s, 0.0); // |1_A 1_B 0_S⟩
        let rho = DensityMatrix::pure(&v, vec![2, 2, 2]).unwrap();
        let ab = partial_trace(&rho, &[0, 1]).unwrap();
        assert!((negativity(&ab, 1).unwrap() - 0.5).abs() < 1e-10);
    }
}
