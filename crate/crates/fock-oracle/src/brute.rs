//! Brute-force vacuum expectation values in truncated Fock space
//!
//! Builds every slot displacement `e^{±Y_u}` as an explicit matrix
//! exponential on a product of truncated oscillator modes and applies
//! the hyperbolic factors `ŷ^{l}_u = ½(e^{Y_u} + l·e^{−Y_u})` to the
//! vacuum vector one by one. No Gaussian identity, commutator algebra,
//! or closed-form overlap enters anywhere — agreement with the fast
//! kernel route is therefore an independent check of the entire
//! 256-term expansion.
//!
//! The truncation is chosen adaptively: the value is recomputed with a
//! doubled cutoff until two successive evaluations agree to 1e-8.

use nalgebra::DMatrix;
use num_complex::Complex64;
use udw_core::SignPattern;

use crate::config::ModeConfig;
use crate::error::{FockError, Result};

/// Agreement required between two successive cutoff doublings.
pub const CONVERGENCE_TOL: f64 = 1e-8;
/// Hard ceiling on the per-mode occupation cutoff.
const MAX_CUTOFF: usize = 192;
/// Hard ceiling on the state-vector length (memory guard).
const MAX_ENTRIES: usize = 40_000_000;

/// Slot order of the canonical mirror-symmetric product.
const CANONICAL_SLOTS: [usize; 8] = [0, 1, 2, 3, 3, 2, 1, 0];

/// `exp(α b† − α* b)` on a single mode truncated at occupation
/// `dim − 1`, via the eigendecomposition of the Hermitian generator
/// `H = −i(α b† − α* b)`.
fn displacement(alpha: Complex64, dim: usize) -> Result<DMatrix<Complex64>> {
    let mut h = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for k in 1..dim {
        let root = (k as f64).sqrt();
        // H[k, k-1] = −i·α·√k and its conjugate transpose.
        h[(k, k - 1)] = Complex64::new(0.0, -1.0) * alpha * root;
        h[(k - 1, k)] = Complex64::new(0.0, 1.0) * alpha.conj() * root;
    }
    let eig = nalgebra::linalg::SymmetricEigen::try_new(h, f64::EPSILON, 10_000)
        .ok_or_else(|| FockError::Internal("displacement eigendecomposition failed".into()))?;
    let phases: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&w| Complex64::from_polar(1.0, w))
        .collect();
    let mut out = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, phase) in phases.iter().enumerate() {
                acc += eig.eigenvectors[(i, m)] * phase * eig.eigenvectors[(j, m)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Applies `mat` along one tensor axis of the flat row-major state.
fn apply_axis(
    state: &[Complex64],
    mat: &DMatrix<Complex64>,
    axis: usize,
    n_modes: usize,
    dim: usize,
) -> Vec<Complex64> {
    let stride = dim.pow((n_modes - 1 - axis) as u32);
    let block = stride * dim;
    let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
    for base in (0..state.len()).step_by(block) {
        for offset in 0..stride {
            let start = base + offset;
            for i in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..dim {
                    acc += mat[(i, j)] * state[start + j * stride];
                }
                out[start + i * stride] = acc;
            }
        }
    }
    out
}

/// One full evaluation at a fixed cutoff.
fn evaluate(labels: &[i8], slots: &[usize], cfg: &ModeConfig, cutoff: usize) -> Result<Complex64> {
    let dim = cutoff + 1;
    let n_modes = cfg.n_modes();
    let total = dim
        .checked_pow(n_modes as u32)
        .filter(|&t| t <= MAX_ENTRIES)
        .ok_or_else(|| {
            FockError::Precision(format!(
                "state vector of {n_modes} modes at cutoff {cutoff} exceeds the memory guard"
            ))
        })?;
    let mut used: Vec<usize> = slots.to_vec();
    used.sort_unstable();
    used.dedup();
    let mut d_plus: [Vec<DMatrix<Complex64>>; 4] = std::array::from_fn(|_| Vec::new());
    let mut d_minus: [Vec<DMatrix<Complex64>>; 4] = std::array::from_fn(|_| Vec::new());
    for &u in &used {
        for m in 0..n_modes {
            let d = displacement(cfg.amplitudes(u)[m], dim)?;
            d_minus[u].push(d.adjoint());
            d_plus[u].push(d);
        }
    }
    let mut state = vec![Complex64::new(0.0, 0.0); total];
    state[0] = Complex64::new(1.0, 0.0);
    // Rightmost factor acts first.
    for (&label, &u) in labels.iter().zip(slots).rev() {
        let mut plus = state.clone();
        let mut minus = state;
        for m in 0..n_modes {
            plus = apply_axis(&plus, &d_plus[u][m], m, n_modes, dim);
            minus = apply_axis(&minus, &d_minus[u][m], m, n_modes, dim);
        }
        state = plus
            .iter()
            .zip(&minus)
            .map(|(p, q)| 0.5 * (p + f64::from(label) * q))
            .collect();
    }
    Ok(state[0])
}

/// Vacuum expectation value of an arbitrary product
/// `Π_k ŷ^{labels[k]}_{slots[k]}`, evaluated by explicit truncated
/// matrices with adaptive cutoff doubling.
pub fn brute_sequence_vev(labels: &[i8], slots: &[usize], cfg: &ModeConfig) -> Result<Complex64> {
    if labels.len() != slots.len() || labels.len() > 8 {
        return Err(FockError::Config(format!(
            "need matching label/slot lists of at most 8 factors, got {} and {}",
            labels.len(),
            slots.len()
        )));
    }
    if labels.iter().any(|&l| l != 1 && l != -1) {
        return Err(FockError::Config("labels must be +1 or -1".into()));
    }
    if slots.iter().any(|&u| u > 3) {
        return Err(FockError::Config("slot indices must be 0..4".into()));
    }
    let mut cutoff = (cfg.cutoff() / 2).max(4);
    let mut previous = evaluate(labels, slots, cfg, cutoff)?;
    loop {
        let doubled = cutoff * 2;
        if doubled > MAX_CUTOFF {
            return Err(FockError::Precision(format!(
                "no convergence to {CONVERGENCE_TOL:.0e} below cutoff {MAX_CUTOFF}"
            )));
        }
        let refined = evaluate(labels, slots, cfg, doubled)?;
        if (refined - previous).norm() <= CONVERGENCE_TOL {
            return Ok(refined);
        }
        previous = refined;
        cutoff = doubled;
    }
}

/// Vacuum expectation value of the canonical mirror-symmetric product
/// `ŷ^{l₁}_{A1} ŷ^{l₂}_{A2} ŷ^{l₃}_{B1} ŷ^{l₄}_{B2} ŷ^{l₅}_{B2} ŷ^{l₆}_{B1} ŷ^{l₇}_{A2} ŷ^{l₈}_{A1}`.
pub fn brute_h(labels: &SignPattern, cfg: &ModeConfig) -> Result<Complex64> {
    brute_sequence_vev(&labels.signs(), &CANONICAL_SLOTS, cfg)
}
