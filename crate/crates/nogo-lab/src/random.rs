//! Seeded random draws of operators and states used by the randomized
//! suites. Everything is deterministic given a base seed; each trial gets
//! an independent stream derived from `(seed, trial index)`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use qmat::{ComplexMatrix, DensityMatrix, HermitianOp};

/// Mixes a base seed with a trial index into a fresh stream seed, so trials
/// are independent and insertion/removal of one trial does not shift the
/// draws of the others.
pub fn derive_trial_seed(seed: u64, trial: u64) -> u64 {
    // SplitMix64 finalizer over the combined words.
    let mut z = seed ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A deterministic RNG for one trial of a suite.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(derive_trial_seed(seed, trial))
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// A random Hermitian operator with Gaussian entries, `H = (G + G†)/2`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> HermitianOp {
    let mut data = Vec::with_capacity(dim * dim);
    for _ in 0..dim * dim {
        data.push(complex_normal(rng));
    }
    let g = ComplexMatrix::from_vec(dim, dim, data).expect("finite Gaussian entries");
    let sym = g
        .add(&g.adjoint())
        .and_then(|s| s.scale(Complex64::new(0.5, 0.0)))
        .expect("same shape");
    HermitianOp::new(sym).expect("symmetrized matrix is Hermitian")
}

/// A random full-rank density operator from the Ginibre ensemble,
/// `ρ = GG† / Tr(GG†)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let mut data = Vec::with_capacity(dim * dim);
    for _ in 0..dim * dim {
        data.push(complex_normal(rng));
    }
    let g = ComplexMatrix::from_vec(dim, dim, data).expect("finite Gaussian entries");
    let gg = g.matmul(&g.adjoint()).expect("square product");
    let tr = gg.trace().expect("square matrix").re;
    let rho = gg.scale(Complex64::new(1.0 / tr, 0.0)).expect("finite scale");
    DensityMatrix::new(rho, vec![dim]).expect("Ginibre state is a valid density operator")
}

/// A Haar-like random unit vector with Gaussian components.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}
