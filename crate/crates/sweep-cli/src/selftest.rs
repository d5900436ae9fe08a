//! The `selftest` subcommand: end-to-end checks that this installation
//! computes what it claims — closed special functions against quadrature,
//! the analytic vacuum expectation expansion against the truncated
//! number-basis oracle, the closed partial-transpose spectrum against dense
//! numerics, and a deliberate-corruption probe of the oracle's power.

use anyhow::Result;
use fock_oracle::quadrature::{i_c_numeric, i_s_numeric};
use fock_oracle::{brute_h, match_amplitudes_for};
use num_complex::Complex64;
use qmat::{herm_eigvalsh, partial_transpose_raw, ComplexMatrix, HermitianOp};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use udw_core::{h_function, h_function_with_f, i_c, i_s, KContext, SignPattern, XState};

/// One named check: `Ok(detail)` on success, `Err(reason)` on failure.
type Check = (&'static str, fn(u64) -> std::result::Result<String, String>);

fn quadrature_check(_seed: u64) -> std::result::Result<String, String> {
    let mut worst = 0.0f64;
    for k in 0..9 {
        let x = -2.4 + 0.6 * k as f64;
        let ds = (i_s(x) - i_s_numeric(x)).abs();
        let dc = (i_c(x) - i_c_numeric(x)).abs();
        worst = worst.max(ds).max(dc);
        if ds > 1e-8 || dc > 1e-8 {
            return Err(format!("closed forms disagree with quadrature at x={x}"));
        }
    }
    Ok(format!("max deviation {worst:.2e} over 9 points"))
}

fn exact_values_check(_seed: u64) -> std::result::Result<String, String> {
    let expected = (5.0 - 8.0 * 2.0f64.ln()) / 12.0;
    let d2 = (i_c(2.0) - expected).abs();
    let d0 = (i_c(0.0) - 0.25).abs();
    if d2 > 1e-15 || d0 > 1e-15 {
        return Err(format!("exact values off by {d2:.2e} / {d0:.2e}"));
    }
    Ok("cosine moments at 0 and 2 reproduced to machine precision".into())
}

fn random_context(rng: &mut ChaCha12Rng) -> (KContext, fock_oracle::ModeConfig) {
    let a1: f64 = rng.random_range(0.0..2.0);
    let a2 = a1 + rng.random_range(0.0..1.5);
    let b: f64 = rng.random_range(0.0..2.5);
    let times = if rng.random::<bool>() {
        [a1, a2, b, b]
    } else {
        [a1, a1, b, b]
    };
    let lambda = rng.random_range(0.1..0.8);
    let ctx = KContext::new(times, lambda).expect("valid context");
    let cfg = match_amplitudes_for(times, [lambda / 2.0; 4], 18).expect("valid config");
    (ctx, cfg)
}

fn oracle_agreement_check(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x5eed_0001);
    let mut worst = 0.0f64;
    for i in 0..10 {
        let (ctx, cfg) = random_context(&mut rng);
        let pattern = SignPattern::from_mask(rng.random());
        let analytic = h_function(&pattern, &ctx);
        let brute = brute_h(&pattern, &cfg).map_err(|e| format!("oracle failed: {e}"))?;
        let diff = (analytic - brute).norm();
        worst = worst.max(diff);
        if diff > 1e-6 {
            return Err(format!("instance {i}: expansion vs oracle diff {diff:.3e}"));
        }
    }
    Ok(format!("10 instances, worst diff {worst:.2e}"))
}

fn route_equivalence_check(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x5eed_0002);
    let tau = std::f64::consts::TAU;
    let mut worst = 0.0f64;
    for i in 0..50 {
        let raw: [f64; 4] = std::array::from_fn(|_| -rng.random::<f64>().max(1e-12).ln());
        let sum: f64 = raw.iter().sum();
        let d = raw.map(|x| x / sum);
        let x = XState::new(
            d[0],
            d[1],
            d[2],
            d[3],
            Complex64::from_polar((d[0] * d[3]).sqrt() * rng.random::<f64>(), rng.random_range(0.0..tau)),
            Complex64::from_polar((d[1] * d[2]).sqrt() * rng.random::<f64>(), rng.random_range(0.0..tau)),
        )
        .map_err(|e| format!("state construction failed: {e}"))?;
        let mut closed = x.pt_eigenvalues().to_vec();
        closed.sort_by(f64::total_cmp);
        let rows: Vec<Vec<Complex64>> = x.dense().iter().map(|r| r.to_vec()).collect();
        let numeric = ComplexMatrix::from_rows(&rows)
            .and_then(|m| partial_transpose_raw(&m, &[2, 2], 1))
            .and_then(|pt| HermitianOp::new(pt))
            .and_then(|h| herm_eigvalsh(&h))
            .map_err(|e| format!("numeric route failed: {e}"))?;
        for (c, n) in closed.iter().zip(&numeric) {
            let diff = (c - n).abs();
            worst = worst.max(diff);
            if diff > 1e-10 {
                return Err(format!("state {i}: closed vs numeric spectrum diff {diff:.3e}"));
            }
        }
    }
    Ok(format!("50 states, worst spectrum diff {worst:.2e}"))
}

fn mutation_detection_check(_seed: u64) -> std::result::Result<String, String> {
    let times = [0.3, 1.1, 1.7, 1.7];
    let lambda = 0.9;
    let ctx = KContext::new(times, lambda).expect("valid context");
    let cfg = match_amplitudes_for(times, [lambda / 2.0; 4], 20).expect("valid config");
    let pattern = SignPattern::new([1, -1, 1, 1, 1, 1, -1, 1]).expect("valid pattern");
    let brute = brute_h(&pattern, &cfg).map_err(|e| format!("oracle failed: {e}"))?;
    let good = (h_function(&pattern, &ctx) - brute).norm();
    // Corrupted branch-weight convention: the weight that should be +1 for
    // a mixed pairing is zeroed out. The oracle must notice.
    let zeroed = |l: i8, p: i8| if l == -1 && p == -1 { -1.0 } else { f64::from((l == 1 && p == 1) as u8) };
    let bad = (h_function_with_f(&pattern, &ctx, zeroed) - brute).norm();
    if good > 1e-6 {
        return Err(format!("healthy expansion already off by {good:.3e}"));
    }
    if bad < 1e-3 {
        return Err(format!("corrupted expansion went undetected (diff {bad:.3e})"));
    }
    Ok(format!("healthy diff {good:.2e}, corrupted diff {bad:.2e} flagged"))
}

/// Runs all checks in order, printing one line per check. Returns `true`
/// when everything passed.
pub fn run_selftest(seed: u64) -> Result<bool> {
    let checks: [Check; 5] = [
        ("special-function quadrature", quadrature_check),
        ("exact special values", exact_values_check),
        ("oracle agreement", oracle_agreement_check),
        ("partial-transpose route equivalence", route_equivalence_check),
        ("mutation detection", mutation_detection_check),
    ];
    for (name, check) in checks {
        match check(seed) {
            Ok(detail) => println!("ok   - {name}: {detail}"),
            Err(reason) => {
                println!("FAIL - {name}: {reason}");
                return Ok(false);
            }
        }
    }
    Ok(true)
}
