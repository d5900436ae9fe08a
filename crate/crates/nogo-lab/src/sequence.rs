//! Ordered sequences of simple-generated couplings on `A ⊗ S ⊗ B`, the
//! states they produce, and the commutator structure of their source
//! observables.

use qmat::{negativity, partial_trace, ComplexMatrix, DensityMatrix};

use crate::coupling::{embed_and_exponentiate, SimpleCoupling, Target};
use crate::error::{NogoError, Result};

/// Frobenius norms below this count as a vanishing commutator: well above
/// eigensolve noise, far below any generic random draw.
pub const VANISHING_TOL: f64 = 1e-10;

/// An ordered list of couplings applied left-to-right in time on fixed
/// dimensions `(d_A, d_S, d_B)`.
#[derive(Debug, Clone)]
pub struct InteractionSequence {
    couplings: Vec<SimpleCoupling>,
    dims: (usize, usize, usize),
}

impl InteractionSequence {
    /// Validates length 1–6 and that every coupling matches `dims`.
    pub fn new(couplings: Vec<SimpleCoupling>, dims: (usize, usize, usize)) -> Result<Self> {
        if couplings.is_empty() || couplings.len() > 6 {
            return Err(NogoError::Argument(format!(
                "sequence length must be 1..=6, got {}",
                couplings.len()
            )));
        }
        let (d_a, d_s, d_b) = dims;
        for (k, c) in couplings.iter().enumerate() {
            if c.source_dim() != d_s {
                return Err(NogoError::Dimension(format!(
                    "coupling {k}: source dim {} != d_S = {d_s}",
                    c.source_dim()
                )));
            }
            let expect = match c.target() {
                Target::A => d_a,
                Target::B => d_b,
            };
            if c.target_dim() != expect {
                return Err(NogoError::Dimension(format!(
                    "coupling {k}: target dim {} != {expect}",
                    c.target_dim()
                )));
            }
        }
        Ok(Self { couplings, dims })
    }

    /// The couplings in application order.
    pub fn couplings(&self) -> &[SimpleCoupling] {
        &self.couplings
    }

    /// `(d_A, d_S, d_B)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }
}

/// Frobenius norms of the three source-observable commutators of a
/// three-coupling sequence, with their vanishing flags.
///
/// The order is `[X_B1, X_A1]`, `[X_B1, X_A2]`, `[X_A1, X_A2]`, where `A1`
/// and `A2` are the first and second coupling targeting detector A in
/// sequence order and `B1` is the single coupling targeting B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorProfile {
    /// `‖[X_B1, X_A1]‖_F`, `‖[X_B1, X_A2]‖_F`, `‖[X_A1, X_A2]‖_F`.
    pub norms: [f64; 3],
    /// `norms[i] < 1e-10`, elementwise.
    pub vanishing: [bool; 3],
}

impl CommutatorProfile {
    /// Number of vanishing commutators.
    pub fn n_vanishing(&self) -> usize {
        self.vanishing.iter().filter(|&&v| v).count()
    }
}

/// Applies the couplings in order to a product state on `A ⊗ S ⊗ B`,
/// traces out the source, and reports the final AB state together with its
/// negativity across the A:B cut.
pub fn run_sequence(
    seq: &InteractionSequence,
    rho0: &DensityMatrix,
) -> Result<(DensityMatrix, f64)> {
    let (d_a, d_s, d_b) = seq.dims();
    if rho0.subsystem_dims() != [d_a, d_s, d_b] {
        return Err(NogoError::Dimension(format!(
            "initial state has subsystem dims {:?}, sequence expects {:?}",
            rho0.subsystem_dims(),
            [d_a, d_s, d_b]
        )));
    }
    let mut state: ComplexMatrix = rho0.matrix().clone();
    for c in seq.couplings() {
        let u = embed_and_exponentiate(c, seq.dims())?;
        state = u.matmul(&state)?.matmul(&u.adjoint())?;
    }
    let full = DensityMatrix::new(state, vec![d_a, d_s, d_b])?;
    let ab = partial_trace(&full, &[0, 2])?;
    let neg = negativity(&ab, 1)?;
    Ok((ab, neg))
}

/// The commutator profile of a sequence with exactly three couplings, two
/// targeting A and one targeting B (in any order).
pub fn commutator_profile(seq: &InteractionSequence) -> Result<CommutatorProfile> {
    if seq.couplings().len() != 3 {
        return Err(NogoError::Argument(format!(
            "commutator profile needs exactly 3 couplings, got {}",
            seq.couplings().len()
        )));
    }
    let a_list: Vec<&SimpleCoupling> = seq
        .couplings()
        .iter()
        .filter(|c| c.target() == Target::A)
        .collect();
    let b_list: Vec<&SimpleCoupling> = seq
        .couplings()
        .iter()
        .filter(|c| c.target() == Target::B)
        .collect();
    if a_list.len() != 2 || b_list.len() != 1 {
        return Err(NogoError::Argument(format!(
            "expected two A couplings and one B coupling, got {} and {}",
            a_list.len(),
            b_list.len()
        )));
    }
    let x_b1 = b_list[0].x().matrix();
    let x_a1 = a_list[0].x().matrix();
    let x_a2 = a_list[1].x().matrix();

    let comm = |p: &ComplexMatrix, q: &ComplexMatrix| -> Result<f64> {
        Ok(p.matmul(q)?.sub(&q.matmul(p)?)?.frobenius_norm())
    };
    let norms = [comm(x_b1, x_a1)?, comm(x_b1, x_a2)?, comm(x_a1, x_a2)?];
    Ok(CommutatorProfile {
        norms,
        vanishing: [
            norms[0] < VANISHING_TOL,
            norms[1] < VANISHING_TOL,
            norms[2] < VANISHING_TOL,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use qmat::HermitianOp;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn herm(rows: &[Vec<Complex64>]) -> HermitianOp {
        HermitianOp::new(ComplexMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn diag2(a: f64, b: f64) -> HermitianOp {
        herm(&[
            vec![c64(a, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(b, 0.0)],
        ])
    }

    fn sx() -> HermitianOp {
        herm(&[
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
        ])
    }

    fn seq_with_sources(xb: HermitianOp, xa1: HermitianOp, xa2: HermitianOp) -> InteractionSequence {
        let m = diag2(0.4, -0.9);
        InteractionSequence::new(
            vec![
                SimpleCoupling::new(Target::B, m.clone(), xb),
                SimpleCoupling::new(Target::A, m.clone(), xa1),
                SimpleCoupling::new(Target::A, m, xa2),
            ],
            (2, 2, 2),
        )
        .unwrap()
    }

    #[test]
    fn all_diagonal_sources_commute() {
        let seq = seq_with_sources(diag2(1.0, 2.0), diag2(3.0, -1.0), diag2(0.5, 0.25));
        let profile = commutator_profile(&seq).unwrap();
        assert_eq!(profile.vanishing, [true, true, true]);
        assert_eq!(profile.n_vanishing(), 3);
    }

    #[test]
    fn mixed_bases_give_the_expected_profile() {
        // X_B1 = σx, X_A1 = σz, X_A2 = σz: only [X_A1, X_A2] vanishes.
        let seq = seq_with_sources(sx(), diag2(1.0, -1.0), diag2(1.0, -1.0));
        let profile = commutator_profile(&seq).unwrap();
        assert!(!profile.vanishing[0]);
        assert!(!profile.vanishing[1]);
        assert!(profile.vanishing[2]);
        // ‖[σx, σz]‖_F = ‖−2iσy‖_F = 2√2.
        assert!((profile.norms[0] - 2.0 * 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn profile_rejects_wrong_arity() {
        let m = diag2(1.0, 0.0);
        let seq = InteractionSequence::new(
            vec![SimpleCoupling::new(Target::A, m.clone(), m.clone())],
            (2, 2, 2),
        )
        .unwrap();
        assert!(matches!(
            commutator_profile(&seq).unwrap_err(),
            NogoError::Argument(_)
        ));
    }

    #[test]
    fn sequence_validation_rejects_bad_dims() {
        let m = diag2(1.0, 0.0);
        let c = SimpleCoupling::new(Target::A, m.clone(), m.clone());
        assert!(InteractionSequence::new(vec![c], (2, 3, 2)).is_err());
    }
}
