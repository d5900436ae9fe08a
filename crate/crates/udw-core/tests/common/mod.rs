//! Shared helpers for the integration tests.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use udw_core::DeltaSchedule;

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Draws a random valid schedule across all supported patterns.
///
/// Times fall in `[0, 3]`, strengths in `[0.05, max_lambda]`, gaps in
/// `[-6, 6]`. With small probability a detector's two couplings
/// coincide, exercising the merged-pair limit.
#[allow(dead_code)] // compiled per test target; not every target draws schedules
pub fn random_schedule<R: Rng>(rng: &mut R, max_lambda: f64) -> DeltaSchedule {
    loop {
        let lambda = rng.random_range(0.05..max_lambda);
        let gap_a = rng.random_range(-6.0..6.0);
        let gap_b = rng.random_range(-6.0..6.0);
        let t = |rng: &mut R| rng.random_range(0.0..3.0);
        let attempt = match rng.random_range(0..3usize) {
            0 => {
                let t_a = t(rng);
                DeltaSchedule::two_event(t_a, t(rng), lambda, gap_a, gap_b)
            }
            1 => {
                let mut t_a1 = t(rng);
                let mut t_a2 = if rng.random::<f64>() < 0.1 { t_a1 } else { t(rng) };
                if t_a1 > t_a2 {
                    std::mem::swap(&mut t_a1, &mut t_a2);
                }
                DeltaSchedule::three_event(t_a1, t_a2, t(rng), lambda, gap_a, gap_b)
            }
            _ => {
                let (mut t_a1, mut t_a2) = (t(rng), t(rng));
                if t_a1 > t_a2 {
                    std::mem::swap(&mut t_a1, &mut t_a2);
                }
                let (mut t_b1, mut t_b2) = (t(rng), t(rng));
                if t_b1 > t_b2 {
                    std::mem::swap(&mut t_b1, &mut t_b2);
                }
                DeltaSchedule::four_event(t_a1, t_a2, t_b1, t_b2, lambda, gap_a, gap_b)
            }
        };
        if let Ok(schedule) = attempt {
            return schedule;
        }
    }
}
