//! Simple-generated couplings: unitaries of the form `exp(−i m ⊗ X)` with
//! one observable on a target system and one on the shared source, their
//! controlled-unitary decomposition over the spectrum of `X`, and the
//! measure-and-prepare channel they induce on the target.

use num_complex::Complex64;
use qmat::{
    herm_eig, kron, partial_trace, unitary_from_generator, ComplexMatrix, DensityMatrix,
    HermitianOp,
};

use crate::error::{NogoError, Result};

/// Which detector a coupling acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    A,
    B,
}

/// One simple-generated interaction: the unitary `exp(−i m ⊗ X)` with `m`
/// Hermitian on the target detector and `X` Hermitian on the source.
///
/// The generator has Schmidt rank one across the target/source cut, which
/// is exactly the structure the entanglement-breaking theorem needs.
#[derive(Debug, Clone)]
pub struct SimpleCoupling {
    target: Target,
    m: HermitianOp,
    x: HermitianOp,
}

impl SimpleCoupling {
    /// Wraps the two observables; both are already validated Hermitian.
    pub fn new(target: Target, m: HermitianOp, x: HermitianOp) -> Self {
        Self { target, m, x }
    }

    /// The detector this coupling acts on.
    pub fn target(&self) -> Target {
        self.target
    }

    /// Target-side observable.
    pub fn m(&self) -> &HermitianOp {
        &self.m
    }

    /// Source-side observable.
    pub fn x(&self) -> &HermitianOp {
        &self.x
    }

    /// Dimension of the target-side observable.
    pub fn target_dim(&self) -> usize {
        self.m.dim()
    }

    /// Dimension of the source-side observable.
    pub fn source_dim(&self) -> usize {
        self.x.dim()
    }
}

/// One branch of a controlled-unitary decomposition: on the eigenspace of
/// `X` with eigenvalue `x_value` (spanned by `projector`), the target is
/// rotated by `local_unitary = exp(−i x_value m)`.
#[derive(Debug, Clone)]
pub struct Branch {
    /// Spectral point of the source observable.
    pub x_value: f64,
    /// Orthogonal projector onto the (possibly degenerate) eigenspace.
    pub projector: ComplexMatrix,
    /// Target rotation applied on that eigenspace.
    pub local_unitary: ComplexMatrix,
}

/// Eigenvalues of `X` closer than this are merged into one spectral branch.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// The full-space unitary of a coupling on the `A ⊗ S ⊗ B` ordering.
///
/// The exponential acts on the coupled pair only; the untouched detector
/// receives an identity factor. `dims` is `(d_A, d_S, d_B)`.
pub fn embed_and_exponentiate(
    c: &SimpleCoupling,
    dims: (usize, usize, usize),
) -> Result<ComplexMatrix> {
    let (d_a, d_s, d_b) = dims;
    if c.source_dim() != d_s {
        return Err(NogoError::Dimension(format!(
            "source observable has dim {}, sequence has d_S = {d_s}",
            c.source_dim()
        )));
    }
    let expected_target = match c.target {
        Target::A => d_a,
        Target::B => d_b,
    };
    if c.target_dim() != expected_target {
        return Err(NogoError::Dimension(format!(
            "target observable has dim {}, sequence expects {expected_target}",
            c.target_dim()
        )));
    }
    // exp(−i H₁ ⊗ 1) = exp(−i H₁) ⊗ 1, so exponentiate on the coupled pair
    // and tensor the identity afterwards.
    match c.target {
        Target::A => {
            let gen = HermitianOp::new(kron(c.m.matrix(), c.x.matrix())?)?;
            let u = unitary_from_generator(&gen)?;
            Ok(kron(&u, &ComplexMatrix::identity(d_b))?)
        }
        Target::B => {
            let gen = HermitianOp::new(kron(c.x.matrix(), c.m.matrix())?)?;
            let u = unitary_from_generator(&gen)?;
            Ok(kron(&ComplexMatrix::identity(d_a), &u)?)
        }
    }
}

/// Rewrites `exp(−i m ⊗ X)` as a unitary controlled on the spectrum of
/// `X`: the sum `Σ_k exp(−i x_k m) ⊗ |x_k⟩⟨x_k|` over distinct spectral
/// points, with eigenvalues within [`DEGENERACY_TOL`] of each other merged
/// into a single branch.
///
/// The returned projectors are mutually orthogonal and complete, and the
/// reconstruction `Σ_k local_unitary_k ⊗ projector_k` agrees with
/// [`embed_and_exponentiate`] to within 1e-10.
pub fn controlled_decomposition(c: &SimpleCoupling) -> Result<Vec<Branch>> {
    let (values, vectors) = herm_eig(&c.x)?;
    let d_s = c.source_dim();

    // Cluster the ascending eigenvalues by gaps below the tolerance.
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for k in 0..d_s {
        match clusters.last_mut() {
            Some(cluster)
                if (values[k] - values[*cluster.last().expect("cluster nonempty")]).abs()
                    < DEGENERACY_TOL =>
            {
                cluster.push(k);
            }
            _ => clusters.push(vec![k]),
        }
    }

    let mut branches = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let x_value = cluster.iter().map(|&k| values[k]).sum::<f64>() / cluster.len() as f64;
        let mut projector = ComplexMatrix::zeros(d_s, d_s);
        for &k in &cluster {
            let column: Vec<Complex64> = (0..d_s).map(|row| vectors.get(row, k)).collect();
            projector = projector.add(&ComplexMatrix::outer(&column)?)?;
        }
        let scaled = HermitianOp::new(c.m.matrix().scale(Complex64::new(x_value, 0.0))?)?;
        let local_unitary = unitary_from_generator(&scaled)?;
        branches.push(Branch {
            x_value,
            projector,
            local_unitary,
        });
    }
    Ok(branches)
}

/// The channel the coupling induces on its target once the source is
/// traced out: `ρ ↦ Σ_k Tr(P_k ρ_S) · exp(−i x_k m) ρ exp(+i x_k m)`.
///
/// This is a measure-and-prepare form — measure `X` on the source, apply
/// the matching target rotation — which is why a single simple-generated
/// interaction can never leave the target entangled with anything else.
pub fn channel_output(
    c: &SimpleCoupling,
    rho_target0: &DensityMatrix,
    rho_source: &DensityMatrix,
) -> Result<DensityMatrix> {
    if rho_target0.dim() != c.target_dim() {
        return Err(NogoError::Dimension(format!(
            "target state dim {} does not match observable dim {}",
            rho_target0.dim(),
            c.target_dim()
        )));
    }
    if rho_source.dim() != c.source_dim() {
        return Err(NogoError::Dimension(format!(
            "source state dim {} does not match observable dim {}",
            rho_source.dim(),
            c.source_dim()
        )));
    }
    let branches = controlled_decomposition(c)?;
    let dim = rho_target0.dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for branch in &branches {
        let weight = branch
            .projector
            .matmul(rho_source.matrix())?
            .trace()?
            .re;
        let rotated = branch
            .local_unitary
            .matmul(rho_target0.matrix())?
            .matmul(&branch.local_unitary.adjoint())?;
        out = out.add(&rotated.scale(Complex64::new(weight, 0.0))?)?;
    }
    Ok(DensityMatrix::new(out, vec![dim])?)
}

/// Reference route for [`channel_output`]: conjugate by the full pair
/// unitary, then trace out the source. The two routes agree to 1e-10.
pub fn channel_output_by_evolution(
    c: &SimpleCoupling,
    rho_target0: &DensityMatrix,
    rho_source: &DensityMatrix,
) -> Result<DensityMatrix> {
    let gen = HermitianOp::new(kron(c.m.matrix(), c.x.matrix())?)?;
    let u = unitary_from_generator(&gen)?;
    let joint = kron(rho_target0.matrix(), rho_source.matrix())?;
    let evolved = u.matmul(&joint)?.matmul(&u.adjoint())?;
    let joint_state =
        DensityMatrix::new(evolved, vec![rho_target0.dim(), rho_source.dim()])?;
    Ok(partial_trace(&joint_state, &[0])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_z() -> HermitianOp {
        HermitianOp::new(
            ComplexMatrix::from_rows(&[
                vec![c64(1.0, 0.0), c64(0.0, 0.0)],
                vec![c64(0.0, 0.0), c64(-1.0, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    fn sigma_x() -> HermitianOp {
        HermitianOp::new(
            ComplexMatrix::from_rows(&[
                vec![c64(0.0, 0.0), c64(1.0, 0.0)],
                vec![c64(1.0, 0.0), c64(0.0, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn zero_generator_embeds_to_identity() {
        let c = SimpleCoupling::new(Target::A, HermitianOp::zero(2), sigma_x());
        let u = embed_and_exponentiate(&c, (2, 2, 3)).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(12)).unwrap() < 1e-14);
    }

    #[test]
    fn sigma_z_source_gives_two_branches_at_minus_plus_one() {
        let c = SimpleCoupling::new(Target::A, sigma_x(), sigma_z());
        let branches = controlled_decomposition(&c).unwrap();
        assert_eq!(branches.len(), 2);
        assert!((branches[0].x_value + 1.0).abs() < 1e-12);
        assert!((branches[1].x_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_source_merges_into_single_product_branch() {
        let c = SimpleCoupling::new(
            Target::A,
            sigma_x(),
            HermitianOp::new(ComplexMatrix::identity(3)).unwrap(),
        );
        let branches = controlled_decomposition(&c).unwrap();
        assert_eq!(branches.len(), 1);
        assert!(
            branches[0]
                .projector
                .max_abs_diff(&ComplexMatrix::identity(3))
                .unwrap()
                < 1e-12
        );
    }

    #[test]
    fn decomposition_reconstructs_the_pair_unitary() {
        let c = SimpleCoupling::new(Target::A, sigma_x(), sigma_z());
        let branches = controlled_decomposition(&c).unwrap();
        let mut rebuilt = ComplexMatrix::zeros(4, 4);
        for b in &branches {
            rebuilt = rebuilt
                .add(&kron(&b.local_unitary, &b.projector).unwrap())
                .unwrap();
        }
        let gen = HermitianOp::new(kron(c.m().matrix(), c.x().matrix()).unwrap()).unwrap();
        let direct = unitary_from_generator(&gen).unwrap();
        assert!(rebuilt.max_abs_diff(&direct).unwrap() < 1e-10);
    }

    #[test]
    fn trivial_channels_fix_the_target() {
        let rho_t = DensityMatrix::pure(&[c64(1.0, 0.0), c64(0.0, 0.0)], vec![2]).unwrap();
        let rho_s = DensityMatrix::new(
            ComplexMatrix::identity(2)
                .scale(c64(0.5, 0.0))
                .unwrap(),
            vec![2],
        )
        .unwrap();
        // m = 0 leaves the target untouched.
        let c = SimpleCoupling::new(Target::A, HermitianOp::zero(2), sigma_z());
        let out = channel_output(&c, &rho_t, &rho_s).unwrap();
        assert!(out.matrix().max_abs_diff(rho_t.matrix()).unwrap() < 1e-14);
    }

    #[test]
    fn source_eigenstate_selects_a_single_rotation() {
        // Source in the −1 eigenstate of σz: target rotated by exp(+i σx).
        let rho_t = DensityMatrix::pure(&[c64(1.0, 0.0), c64(0.0, 0.0)], vec![2]).unwrap();
        let rho_s = DensityMatrix::pure(&[c64(0.0, 0.0), c64(1.0, 0.0)], vec![2]).unwrap();
        let c = SimpleCoupling::new(Target::A, sigma_x(), sigma_z());
        let out = channel_output(&c, &rho_t, &rho_s).unwrap();

        let rot = unitary_from_generator(
            &HermitianOp::new(sigma_x().matrix().scale(c64(-1.0, 0.0)).unwrap()).unwrap(),
        )
        .unwrap();
        let expect = rot
            .matmul(rho_t.matrix())
            .unwrap()
            .matmul(&rot.adjoint())
            .unwrap();
        assert!(out.matrix().max_abs_diff(&expect).unwrap() < 1e-12);
    }

    #[test]
    fn channel_routes_agree_on_a_generic_instance() {
        let rho_t = DensityMatrix::pure(
            &[c64(0.6, 0.0), c64(0.0, 0.8)],
            vec![2],
        )
        .unwrap();
        let rho_s = DensityMatrix::new(
            ComplexMatrix::from_rows(&[
                vec![c64(0.7, 0.0), c64(0.1, 0.2)],
                vec![c64(0.1, -0.2), c64(0.3, 0.0)],
            ])
            .unwrap(),
            vec![2],
        )
        .unwrap();
        let c = SimpleCoupling::new(Target::B, sigma_x(), sigma_z());
        let a = channel_output(&c, &rho_t, &rho_s).unwrap();
        let b = channel_output_by_evolution(&c, &rho_t, &rho_s).unwrap();
        assert!(a.matrix().max_abs_diff(b.matrix()).unwrap() < 1e-10);
    }
}
