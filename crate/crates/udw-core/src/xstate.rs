//! X-shaped two-detector states and their partial-transpose spectrum
//!
//! In the product basis `|g_A g_B⟩, |g_A e_B⟩, |e_A g_B⟩, |e_A e_B⟩` the
//! joint detector state produced by a delta-coupling schedule has the
//! X shape
//!
//! ```text
//! ⎛ ρ11  0    0    ρ14 ⎞
//! ⎜ 0    ρ22  ρ23  0   ⎟
//! ⎜ 0    ρ23* ρ33  0   ⎟
//! ⎝ ρ14* 0    0    ρ44 ⎠
//! ```
//!
//! Its partial transpose over the second detector is again X-shaped with
//! the two coherences exchanged between the blocks, so the four
//! eigenvalues — and hence the negativity — come in closed form from two
//! 2×2 blocks. For a pair of two-level systems the partial-transpose
//! criterion is conclusive, so zero negativity certifies separability.

use num_complex::Complex64;

use crate::error::{Result, UdwError};

/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Allowed violation of the 2×2 coherence-block positivity conditions.
pub const BLOCK_TOL: f64 = 1e-9;

/// A validated X-shaped two-detector state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    r11: f64,
    r22: f64,
    r33: f64,
    r44: f64,
    r14: Complex64,
    r23: Complex64,
}

impl XState {
    /// Validates trace normalisation (`|Σρ_ii − 1| ≤ 1e-10`) and the two
    /// coherence bounds `|ρ14|² ≤ ρ11ρ44 + 1e-9`,
    /// `|ρ23|² ≤ ρ22ρ33 + 1e-9`.
    pub fn new(
        r11: f64,
        r22: f64,
        r33: f64,
        r44: f64,
        r14: Complex64,
        r23: Complex64,
    ) -> Result<Self> {
        let diag = [r11, r22, r33, r44];
        if diag.iter().any(|d| !d.is_finite()) || !r14.norm().is_finite() || !r23.norm().is_finite()
        {
            return Err(UdwError::State(format!(
                "entries must be finite, got diag {diag:?}, r14 {r14}, r23 {r23}"
            )));
        }
        let trace = r11 + r22 + r33 + r44;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(UdwError::State(format!(
                "trace deviates from 1 by {:.3e} (tolerance {TRACE_TOL:.1e})",
                (trace - 1.0).abs()
            )));
        }
        if r14.norm_sqr() > r11 * r44 + BLOCK_TOL {
            return Err(UdwError::State(format!(
                "|r14|^2 = {:.3e} exceeds r11*r44 = {:.3e}",
                r14.norm_sqr(),
                r11 * r44
            )));
        }
        if r23.norm_sqr() > r22 * r33 + BLOCK_TOL {
            return Err(UdwError::State(format!(
                "|r23|^2 = {:.3e} exceeds r22*r33 = {:.3e}",
                r23.norm_sqr(),
                r22 * r33
            )));
        }
        Ok(Self {
            r11,
            r22,
            r33,
            r44,
            r14,
            r23,
        })
    }

    /// Population of `|g_A g_B⟩`.
    pub fn r11(&self) -> f64 {
        self.r11
    }

    /// Population of `|g_A e_B⟩`.
    pub fn r22(&self) -> f64 {
        self.r22
    }

    /// Population of `|e_A g_B⟩`.
    pub fn r33(&self) -> f64 {
        self.r33
    }

    /// Population of `|e_A e_B⟩`.
    pub fn r44(&self) -> f64 {
        self.r44
    }

    /// Outer coherence `⟨g_A g_B|ρ|e_A e_B⟩`.
    pub fn r14(&self) -> Complex64 {
        self.r14
    }

    /// Inner coherence `⟨g_A e_B|ρ|e_A g_B⟩`.
    pub fn r23(&self) -> Complex64 {
        self.r23
    }

    /// Dense 4×4 matrix in the product basis, row major.
    pub fn dense(&self) -> [[Complex64; 4]; 4] {
        let zero = Complex64::new(0.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        [
            [re(self.r11), zero, zero, self.r14],
            [zero, re(self.r22), self.r23, zero],
            [zero, self.r23.conj(), re(self.r33), zero],
            [self.r14.conj(), zero, zero, re(self.r44)],
        ]
    }

    /// Eigenvalues of the partial transpose over the second detector.
    ///
    /// The partial transpose swaps which coherence accompanies which
    /// diagonal pair, so the spectrum splits into the block
    /// `{ρ22, ρ33, ρ14}` and the block `{ρ11, ρ44, ρ23}`:
    ///
    /// ```text
    /// E_{1,2} = ½[(ρ22 + ρ33) ± √((ρ22 − ρ33)² + 4|ρ14|²)]
    /// E_{3,4} = ½[(ρ11 + ρ44) ± √((ρ11 − ρ44)² + 4|ρ23|²)]
    /// ```
    pub fn pt_eigenvalues(&self) -> [f64; 4] {
        let inner = (self.r22 + self.r33, self.r22 - self.r33, self.r14.norm_sqr());
        let outer = (self.r11 + self.r44, self.r11 - self.r44, self.r23.norm_sqr());
        let pair = |(sum, diff, m2): (f64, f64, f64)| {
            let root = (diff * diff + 4.0 * m2).sqrt();
            (0.5 * (sum + root), 0.5 * (sum - root))
        };
        let (e1, e2) = pair(inner);
        let (e3, e4) = pair(outer);
        [e1, e2, e3, e4]
    }

    /// Negativity `−Σ_i min(E_i, 0)` of the partial transpose. Zero if
    /// and only if the two detectors are separable.
    pub fn negativity(&self) -> f64 {
        -self
            .pt_eigenvalues()
            .iter()
            .filter(|&&e| e < 0.0)
            .sum::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn maximally_mixed_state_has_flat_spectrum() {
        let x = XState::new(0.25, 0.25, 0.25, 0.25, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        for e in x.pt_eigenvalues() {
            assert!((e - 0.25).abs() < 1e-15);
        }
        assert_eq!(x.negativity(), 0.0);
    }

    #[test]
    fn bell_state_reaches_maximal_negativity() {
        let x = XState::new(0.5, 0.0, 0.0, 0.5, c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        let mut eigs = x.pt_eigenvalues();
        eigs.sort_by(f64::total_cmp);
        assert!((eigs[0] + 0.5).abs() < 1e-15);
        assert!((x.negativity() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coherence_phase_does_not_change_the_spectrum() {
        let a = XState::new(0.4, 0.2, 0.1, 0.3, c(0.2, 0.1), c(0.05, -0.1)).unwrap();
        let b = XState::new(0.4, 0.2, 0.1, 0.3, c(-0.1, 0.2), c(0.1, 0.05)).unwrap();
        let (ea, eb) = (a.pt_eigenvalues(), b.pt_eigenvalues());
        for k in 0..4 {
            assert!((ea[k] - eb[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn spectrum_sums_to_the_trace() {
        let x = XState::new(0.37, 0.23, 0.19, 0.21, c(0.11, -0.07), c(0.02, 0.13)).unwrap();
        let sum: f64 = x.pt_eigenvalues().iter().sum();
        assert!((sum - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_trace_and_oversized_coherences() {
        assert!(XState::new(0.3, 0.3, 0.3, 0.3, c(0.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(XState::new(0.5, 0.0, 0.0, 0.5, c(0.6, 0.0), c(0.0, 0.0)).is_err());
        assert!(XState::new(0.25, 0.25, 0.25, 0.25, c(0.0, 0.0), c(0.3, 0.0)).is_err());
        assert!(XState::new(f64::NAN, 0.25, 0.25, 0.25, c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn dense_matrix_is_hermitian_with_the_x_shape() {
        let x = XState::new(0.37, 0.23, 0.19, 0.21, c(0.11, -0.07), c(0.02, 0.13)).unwrap();
        let m = x.dense();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m[i][j], m[j][i].conj());
            }
        }
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert_eq!(m[i][j], c(0.0, 0.0));
        }
    }
}
