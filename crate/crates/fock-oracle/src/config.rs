//! Discrete-mode representation of the coupling slots
//!
//! The four coupling slots displace the field along four smeared mode
//! functions whose inner products form the slot Gram matrix
//! `G_uv = (9λ_uλ_v/2π²)·[i_c(t_u−t_v) + i·i_s(t_u−t_v)]`. Any finite
//! set of vectors with the same Gram matrix produces identical vacuum
//! expectation values, so the oracle represents each slot by a vector of
//! complex amplitudes over at most four discrete bosonic modes, obtained
//! from the eigendecomposition `G = W diag(μ) W†` as
//! `a_um = W_um·√μ_m` (modes with negligible weight are dropped).

use nalgebra::DMatrix;
use num_complex::Complex64;
use udw_core::{i_c, i_s, DeltaSchedule, KContext};

use crate::error::{FockError, Result};

/// Default maximum occupation per mode.
pub const DEFAULT_CUTOFF: usize = 24;
/// Relative eigenvalue threshold below which a Gram mode is dropped.
pub const MODE_KEEP_TOL: f64 = 1e-13;
/// Allowed negative relative eigenvalue before the Gram matrix is
/// declared inconsistent.
pub const GRAM_PSD_TOL: f64 = 1e-10;
/// Maximum tolerated occupation-tail mass of any displaced vacuum.
pub const TAIL_BOUND: f64 = 1e-10;

/// Amplitudes of the four coupling slots over the discrete modes,
/// together with the Fock-space truncation.
#[derive(Debug, Clone)]
pub struct ModeConfig {
    amplitudes: [Vec<Complex64>; 4],
    n_modes: usize,
    cutoff: usize,
}

impl ModeConfig {
    /// Validates mode counts (1 to 4, equal across slots), finiteness,
    /// and the occupation tail bound: for every slot and mode the
    /// displaced vacuum `e^{±Y_u}|0⟩` has Poisson occupation with mean
    /// `|a_um|²`, whose mass above `cutoff` must stay below 1e-10.
    pub fn new(amplitudes: [Vec<Complex64>; 4], cutoff: usize) -> Result<Self> {
        let n_modes = amplitudes[0].len();
        if n_modes == 0 || n_modes > 4 {
            return Err(FockError::Config(format!(
                "mode count must be between 1 and 4, got {n_modes}"
            )));
        }
        if amplitudes.iter().any(|a| a.len() != n_modes) {
            return Err(FockError::Config(format!(
                "all four slots must carry {n_modes} mode amplitudes"
            )));
        }
        if cutoff < 2 {
            return Err(FockError::Config(format!(
                "cutoff must be at least 2, got {cutoff}"
            )));
        }
        for (u, slot) in amplitudes.iter().enumerate() {
            for (m, a) in slot.iter().enumerate() {
                if !a.re.is_finite() || !a.im.is_finite() {
                    return Err(FockError::Config(format!(
                        "amplitude of slot {u} mode {m} is not finite: {a}"
                    )));
                }
                let tail = poisson_tail_bound(a.norm_sqr(), cutoff);
                if tail >= TAIL_BOUND {
                    return Err(FockError::Precision(format!(
                        "cutoff {cutoff} leaves occupation tail {tail:.2e} for slot {u} \
                         mode {m} (|a|² = {:.3})",
                        a.norm_sqr()
                    )));
                }
            }
        }
        Ok(Self {
            amplitudes,
            n_modes,
            cutoff,
        })
    }

    /// Number of discrete modes.
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Maximum occupation per mode.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Mode amplitudes of slot `u` (indexed `[A1, A2, B1, B2]`).
    pub fn amplitudes(&self, u: usize) -> &[Complex64] {
        &self.amplitudes[u]
    }
}

/// Upper bound on the Poisson(`mu`) mass above `cutoff`, via the first
/// omitted term and a geometric tail estimate.
fn poisson_tail_bound(mu: f64, cutoff: usize) -> f64 {
    if mu <= 0.0 {
        return 0.0;
    }
    let k0 = (cutoff + 1) as f64;
    if mu >= k0 {
        return f64::INFINITY;
    }
    let ln_factorial: f64 = (1..=cutoff + 1).map(|i| (i as f64).ln()).sum();
    let ln_first = -mu + k0 * mu.ln() - ln_factorial;
    ln_first.exp() / (1.0 - mu / (k0 + 1.0))
}

/// Mode amplitudes reproducing the Gram matrix of four coupling slots
/// with the given times and per-slot strengths.
pub fn match_amplitudes_for(
    times: [f64; 4],
    strengths: [f64; 4],
    cutoff: usize,
) -> Result<ModeConfig> {
    let gram = DMatrix::from_fn(4, 4, |u, v| {
        let pref = 9.0 * strengths[u] * strengths[v] / (2.0 * std::f64::consts::PI.powi(2));
        let dt = times[u] - times[v];
        pref * Complex64::new(i_c(dt), i_s(dt))
    });
    let eig = nalgebra::linalg::SymmetricEigen::try_new(gram, f64::EPSILON, 10_000)
        .ok_or_else(|| FockError::Internal("slot Gram eigendecomposition failed".into()))?;
    let max_eig = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let scale = max_eig.max(1.0);
    if eig.eigenvalues.iter().any(|&w| w < -GRAM_PSD_TOL * scale) {
        return Err(FockError::Internal(format!(
            "slot Gram matrix has negative eigenvalue {:.3e}",
            eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
        )));
    }
    let kept: Vec<usize> = (0..4)
        .filter(|&m| eig.eigenvalues[m] > MODE_KEEP_TOL * max_eig)
        .collect();
    let amplitudes: [Vec<Complex64>; 4] = std::array::from_fn(|u| {
        if kept.is_empty() {
            // Zero coupling: one mode with vanishing amplitude keeps the
            // machinery well-defined.
            vec![Complex64::new(0.0, 0.0)]
        } else {
            kept.iter()
                .map(|&m| eig.eigenvectors[(u, m)] * eig.eigenvalues[m].max(0.0).sqrt())
                .collect()
        }
    });
    ModeConfig::new(amplitudes, cutoff)
}

/// Mode amplitudes for a validated coupling schedule, using its
/// normalised slot times and strengths and the default cutoff.
pub fn match_amplitudes(schedule: &DeltaSchedule) -> Result<ModeConfig> {
    match_amplitudes_with_cutoff(schedule, DEFAULT_CUTOFF)
}

/// [`match_amplitudes`] with an explicit starting cutoff.
pub fn match_amplitudes_with_cutoff(schedule: &DeltaSchedule, cutoff: usize) -> Result<ModeConfig> {
    let slots = schedule.slots();
    match_amplitudes_for(
        std::array::from_fn(|u| slots[u].time),
        std::array::from_fn(|u| slots[u].strength),
        cutoff,
    )
}

/// Mode amplitudes for a canonical-product context (four slots at
/// strength `λ/2`).
pub fn match_amplitudes_for_context(ctx: &KContext, cutoff: usize) -> Result<ModeConfig> {
    match_amplitudes_for(ctx.times(), [0.5 * ctx.lambda(); 4], cutoff)
}

/// Slot Gram matrix target used by [`match_amplitudes_for`]; exposed so
/// tests can verify the matched amplitudes reproduce it.
pub fn gram_target(times: [f64; 4], strengths: [f64; 4]) -> [[Complex64; 4]; 4] {
    std::array::from_fn(|u| {
        std::array::from_fn(|v| {
            let pref = 9.0 * strengths[u] * strengths[v] / (2.0 * std::f64::consts::PI.powi(2));
            let dt = times[u] - times[v];
            pref * Complex64::new(i_c(dt), i_s(dt))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amplitudes_reproduce_the_gram_matrix() {
        let times = [0.1, 0.9, 1.4, 2.2];
        let strengths = [0.6, 0.6, 0.6, 0.6];
        let cfg = match_amplitudes_for(times, strengths, DEFAULT_CUTOFF).unwrap();
        assert_eq!(cfg.n_modes(), 4);
        let target = gram_target(times, strengths);
        for u in 0..4 {
            for v in 0..4 {
                let inner: Complex64 = (0..cfg.n_modes())
                    .map(|m| cfg.amplitudes(u)[m] * cfg.amplitudes(v)[m].conj())
                    .sum();
                assert!(
                    (inner - target[u][v]).norm() < 1e-12,
                    "Gram entry ({u},{v}): {inner} vs {:?}",
                    target[u][v]
                );
            }
        }
    }

    #[test]
    fn merged_slots_reduce_the_mode_count() {
        // Equal-time slot pairs make the Gram matrix rank deficient.
        let cfg = match_amplitudes_for([0.5, 1.0, 0.0, 0.0], [0.4; 4], DEFAULT_CUTOFF).unwrap();
        assert_eq!(cfg.n_modes(), 3);
        let cfg = match_amplitudes_for([0.7, 0.7, 0.0, 0.0], [0.4; 4], DEFAULT_CUTOFF).unwrap();
        assert_eq!(cfg.n_modes(), 2);
    }

    #[test]
    fn zero_coupling_yields_one_silent_mode() {
        let cfg = match_amplitudes_for([0.1, 0.9, 1.4, 2.2], [0.0; 4], DEFAULT_CUTOFF).unwrap();
        assert_eq!(cfg.n_modes(), 1);
        for u in 0..4 {
            assert_eq!(cfg.amplitudes(u)[0], Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn schedule_matching_uses_the_normalised_slots() {
        let s = DeltaSchedule::three_event(0.5, 1.0, 0.0, 0.8, 2.3, 1.1).unwrap();
        let cfg = match_amplitudes(&s).unwrap();
        assert_eq!(cfg.n_modes(), 3);
        assert_eq!(cfg.cutoff(), DEFAULT_CUTOFF);
        // B's merged pair: identical amplitudes for slots 2 and 3.
        for m in 0..cfg.n_modes() {
            assert!((cfg.amplitudes(2)[m] - cfg.amplitudes(3)[m]).norm() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_configurations() {
        assert!(ModeConfig::new(
            [vec![], vec![], vec![], vec![]],
            DEFAULT_CUTOFF
        )
        .is_err());
        assert!(ModeConfig::new(
            [
                vec![Complex64::new(0.1, 0.0)],
                vec![Complex64::new(0.1, 0.0); 2],
                vec![Complex64::new(0.1, 0.0)],
                vec![Complex64::new(0.1, 0.0)],
            ],
            DEFAULT_CUTOFF
        )
        .is_err());
        assert!(ModeConfig::new(
            [
                vec![Complex64::new(f64::NAN, 0.0)],
                vec![Complex64::new(0.1, 0.0)],
                vec![Complex64::new(0.1, 0.0)],
                vec![Complex64::new(0.1, 0.0)],
            ],
            DEFAULT_CUTOFF
        )
        .is_err());
        // Huge displacement at a tiny cutoff violates the tail bound.
        let big = vec![Complex64::new(3.0, 0.0)];
        assert!(matches!(
            ModeConfig::new([big.clone(), big.clone(), big.clone(), big], 4),
            Err(FockError::Precision(_))
        ));
    }

    #[test]
    fn tail_bound_is_monotone_and_tight_enough() {
        assert_eq!(poisson_tail_bound(0.0, 10), 0.0);
        let loose = poisson_tail_bound(1.0, 8);
        let tight = poisson_tail_bound(1.0, 24);
        assert!(tight < loose);
        assert!(tight < 1e-20);
        assert!(poisson_tail_bound(30.0, 24).is_infinite());
    }
}
