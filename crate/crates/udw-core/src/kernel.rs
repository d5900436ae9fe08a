//! Vacuum correlation kernel for the canonical eight-operator product
//!
//! After a delta-coupling schedule, every matrix element of the joint
//! detector state reduces to field vacuum expectation values of products
//! of the eight operators `ŷ^{l}_{u} = ½(e^{Ŷ_u} + l·e^{−Ŷ_u})`
//! (`l = +1` is the "cosh", `l = −1` the "sinh" combination), where
//! `Ŷ_u` is the anti-Hermitian field displacement generated by coupling
//! slot `u`. This module evaluates those expectation values in closed
//! form for the canonical mirror-symmetric product whose factors act on
//! slots `(A1, A2, B1, B2, B2, B1, A2, A1)` at per-slot strength `λ/2`.
//!
//! Expanding each `ŷ` into its two exponentials turns an expectation
//! value into a sum of 256 Gaussian vacuum overlaps; [`k_function`]
//! evaluates one such overlap and [`h_function`] performs the signed
//! 256-term sum.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, UdwError};
use crate::special::{i_c, i_s};

/// Commutator angle between two coupling slots separated by `dt`:
/// `θ(dt, λ) = (9λ²/4π²)·i_s(dt)`. Vanishes identically for `|dt| ≥ 2`.
pub fn theta(dt: f64, lambda: f64) -> f64 {
    (9.0 * lambda * lambda) / (4.0 * PI * PI) * i_s(dt)
}

/// Gaussian modulus of a signed vacuum overlap.
///
/// `s` holds the four *effective* slot signs — the sums of the two
/// exponent signs that hit each slot in the mirror-symmetric product —
/// so each entry is −2, 0, or 2. Returns
/// `exp[−(9λ²/16π²)·Q]` with `Q = Σ_{i≤j} c_ij s_i s_j i_c(t_i − t_j)`,
/// `c_ii = 1` and `c_ij = 2` for `i < j`. `Q ≥ 0` because the symmetric
/// part of the slot Gram matrix is positive semidefinite, so the result
/// is always in `(0, 1]`.
pub fn vacuum_overlap(s: [i8; 4], times: [f64; 4], lambda: f64) -> f64 {
    debug_assert!(
        s.iter().all(|&v| v == -2 || v == 0 || v == 2),
        "effective signs must be -2, 0, or 2"
    );
    let mut q = 0.0;
    for i in 0..4 {
        for j in i..4 {
            let c = if i == j { 1.0 } else { 2.0 };
            q += c * f64::from(s[i]) * f64::from(s[j]) * i_c(times[i] - times[j]);
        }
    }
    (-(9.0 * lambda * lambda) / (16.0 * PI * PI) * q).exp()
}

/// Exponent signs for the eight factors of the canonical product.
///
/// Position `k` (0-based) carries the sign of the `k`-th factor, acting
/// on slot `(A1, A2, B1, B2, B2, B1, A2, A1)[k]`. For [`h_function`] the
/// same positions carry the cosh/sinh labels `l_k` instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignPattern([i8; 8]);

impl SignPattern {
    /// Validates that every entry is `+1` or `−1`.
    pub fn new(signs: [i8; 8]) -> Result<Self> {
        if signs.iter().any(|&v| v != 1 && v != -1) {
            return Err(UdwError::Argument(format!(
                "sign pattern entries must be +1 or -1, got {signs:?}"
            )));
        }
        Ok(Self(signs))
    }

    /// The all-`+1` pattern.
    pub fn all_plus() -> Self {
        Self([1; 8])
    }

    /// The eight signs.
    pub fn signs(&self) -> [i8; 8] {
        self.0
    }

    /// Number of `−1` entries.
    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|&&v| v == -1).count()
    }

    /// Pattern from a bitmask: bit `k` set means position `k` is `−1`.
    pub fn from_mask(mask: u8) -> Self {
        Self(std::array::from_fn(|k| {
            if mask >> k & 1 == 1 {
                -1
            } else {
                1
            }
        }))
    }

    /// Bitmask with bit `k` set where position `k` is `−1`.
    pub fn mask(&self) -> u8 {
        self.0
            .iter()
            .enumerate()
            .fold(0u8, |m, (k, &v)| if v == -1 { m | 1 << k } else { m })
    }
}

/// Slot times and coupling strength for the canonical product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KContext {
    times: [f64; 4],
    lambda: f64,
}

impl KContext {
    /// `times` are the four slot times `[t_A1, t_A2, t_B1, t_B2]`;
    /// `lambda ≥ 0` is the overall coupling strength (each slot couples
    /// at `λ/2`; equal-time slot pairs reproduce the merged-coupling
    /// conventions of [`crate::DeltaSchedule`] at doubled strength).
    pub fn new(times: [f64; 4], lambda: f64) -> Result<Self> {
        if times.iter().any(|t| !t.is_finite()) {
            return Err(UdwError::Argument(format!(
                "slot times must be finite, got {times:?}"
            )));
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(UdwError::Argument(format!(
                "coupling strength must be finite and non-negative, got {lambda}"
            )));
        }
        Ok(Self { times, lambda })
    }

    /// Slot times `[t_A1, t_A2, t_B1, t_B2]`.
    pub fn times(&self) -> [f64; 4] {
        self.times
    }

    /// Overall coupling strength.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// One Gaussian overlap of the 256-term expansion:
/// the vacuum expectation value of `Π_k exp(p_k Ŷ_{u_k})` over the
/// canonical slot order, as `modulus × phase`.
///
/// The modulus is [`vacuum_overlap`] of the effective signs
/// `(p₁+p₈, p₂+p₇, p₃+p₆, p₄+p₅)`; the phase collects one commutator
/// angle `θ` per time-ordered slot pair.
pub fn k_function(p: &SignPattern, ctx: &KContext) -> Complex64 {
    let l = p.signs().map(f64::from);
    let [ta1, ta2, tb1, tb2] = ctx.times;
    let lam = ctx.lambda;
    let eff = [
        (p.signs()[0] + p.signs()[7]),
        (p.signs()[1] + p.signs()[6]),
        (p.signs()[2] + p.signs()[5]),
        (p.signs()[3] + p.signs()[4]),
    ];
    let modulus = vacuum_overlap(eff, ctx.times, lam);
    let th11 = theta(tb1 - ta1, lam);
    let th12 = theta(tb1 - ta2, lam);
    let th21 = theta(tb2 - ta1, lam);
    let th22 = theta(tb2 - ta2, lam);
    let th_a = theta(ta2 - ta1, lam);
    let th_b = theta(tb2 - tb1, lam);
    let angle = (l[0] - l[7]) * (l[2] + l[5]) * th11
        + (l[1] - l[6]) * (l[2] + l[5]) * th12
        + (l[0] - l[7]) * (l[3] + l[4]) * th21
        + (l[1] - l[6]) * (l[3] + l[4]) * th22
        + (l[0] - l[7]) * (l[1] + l[6]) * th_a
        + (l[2] - l[5]) * (l[3] + l[4]) * th_b;
    Complex64::from_polar(modulus, -0.5 * angle)
}

fn standard_f(label: i8, sign: i8) -> f64 {
    if label == -1 && sign == -1 {
        -1.0
    } else {
        1.0
    }
}

/// Vacuum expectation value of the canonical product
/// `ŷ^{l₁}_{A1} ŷ^{l₂}_{A2} ŷ^{l₃}_{B1} ŷ^{l₄}_{B2} ŷ^{l₅}_{B2} ŷ^{l₆}_{B1} ŷ^{l₇}_{A2} ŷ^{l₈}_{A1}`.
///
/// Expands every factor into its two exponentials and sums the 256
/// signed Gaussian overlaps: `h = 2⁻⁸ Σ_p Π_k f(l_k, p_k)·K(p)` with
/// `f(l, p) = −1` iff `l = p = −1` and `+1` otherwise.
///
/// Returns exactly 1 for the all-cosh labels at `λ = 0`, and vanishes
/// (`|h| < 1e-14`) whenever the number of `−1` labels is odd, because
/// each sinh factor is odd in the field displacement.
pub fn h_function(l: &SignPattern, ctx: &KContext) -> Complex64 {
    h_function_with_f(l, ctx, standard_f)
}

/// [`h_function`] with a caller-supplied expansion sign `f(l, p)`.
///
/// Exists so self-checks can corrupt the hyperbolic expansion (e.g.
/// `f = 0` off the sinh/minus diagonal) and confirm the brute-force
/// oracle detects the corruption. Not part of the stable API.
#[doc(hidden)]
pub fn h_function_with_f(l: &SignPattern, ctx: &KContext, f: fn(i8, i8) -> f64) -> Complex64 {
    let labels = l.signs();
    let mut total = Complex64::new(0.0, 0.0);
    for mask in 0u16..256 {
        let p = SignPattern::from_mask(mask as u8);
        let signs = p.signs();
        let mut coeff = 1.0;
        for k in 0..8 {
            coeff *= f(labels[k], signs[k]);
        }
        if coeff != 0.0 {
            total += coeff * k_function(&p, ctx);
        }
    }
    total / 256.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> KContext {
        KContext::new([0.1, 0.9, 1.4, 2.2], 1.2).unwrap()
    }

    #[test]
    fn commutator_angle_support() {
        assert_eq!(theta(2.0, 0.7), 0.0);
        assert_eq!(theta(-3.5, 0.7), 0.0);
        let expected = 9.0 * 0.49 / (4.0 * PI * PI) * i_s(1.0);
        assert!((theta(1.0, 0.7) - expected).abs() < 1e-15);
    }

    #[test]
    fn overlap_of_single_doubled_slot() {
        // Q = 4·i_c(0) = 1 for effective signs (2, 0, 0, 0).
        let lam = 0.8;
        let got = vacuum_overlap([2, 0, 0, 0], [0.3, 1.0, 2.0, 2.5], lam);
        let expected = (-(9.0 * lam * lam) / (16.0 * PI * PI)).exp();
        assert!((got - expected).abs() < 1e-15);
    }

    #[test]
    fn overlap_of_neutral_signs_is_one() {
        assert_eq!(vacuum_overlap([0, 0, 0, 0], [0.0, 1.0, 2.0, 3.0], 1.3), 1.0);
    }

    #[test]
    fn overlap_never_exceeds_one() {
        let times = [0.0, 0.7, 1.1, 2.6];
        for mask in 0..81u32 {
            // All 3^4 sign combinations.
            let mut m = mask;
            let s: [i8; 4] = std::array::from_fn(|_| {
                let v = (m % 3) as i8 * 2 - 2;
                m /= 3;
                v
            });
            let w = vacuum_overlap(s, times, 1.5);
            assert!(w > 0.0 && w <= 1.0 + 1e-15, "overlap {w} for signs {s:?}");
        }
    }

    #[test]
    fn zero_coupling_collapses_every_overlap_to_one() {
        let c = KContext::new([0.1, 0.9, 1.4, 2.2], 0.0).unwrap();
        for mask in 0..=255u8 {
            let k = k_function(&SignPattern::from_mask(mask), &c);
            assert!((k - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let h = h_function(&SignPattern::all_plus(), &c);
        assert!((h - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn all_cosh_expectation_is_real_and_bounded() {
        let h = h_function(&SignPattern::all_plus(), &ctx());
        assert!(h.im.abs() < 1e-14);
        assert!(h.re > 0.0 && h.re <= 1.0);
    }

    #[test]
    fn odd_sinh_count_vanishes() {
        let c = ctx();
        for mask in [0b0000_0001u8, 0b0000_0111, 0b0101_0001, 0b1111_1110] {
            let l = SignPattern::from_mask(mask);
            assert_eq!(l.minus_count() % 2, 1);
            let h = h_function(&l, &c);
            assert!(h.norm() < 1e-14, "|h| = {} for mask {mask:#010b}", h.norm());
        }
    }

    #[test]
    fn mirror_positions_of_one_slot_commute() {
        // Positions 3 and 4 act on the same slot (B2), so swapping their
        // labels cannot change the expectation value.
        let c = ctx();
        let a = h_function(&SignPattern::new([1, 1, 1, -1, 1, 1, -1, 1]).unwrap(), &c);
        let b = h_function(&SignPattern::new([1, 1, 1, 1, -1, 1, -1, 1]).unwrap(), &c);
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn sign_pattern_round_trip_and_validation() {
        for mask in [0u8, 3, 129, 255] {
            assert_eq!(SignPattern::from_mask(mask).mask(), mask);
        }
        assert!(SignPattern::new([1, 1, 0, 1, 1, 1, 1, 1]).is_err());
        assert!(KContext::new([0.0, 1.0, 2.0, f64::NAN], 0.5).is_err());
        assert!(KContext::new([0.0, 1.0, 2.0, 3.0], -0.2).is_err());
    }

    #[test]
    fn corrupted_expansion_sign_changes_the_value() {
        let c = ctx();
        let l = SignPattern::all_plus();
        let good = h_function(&l, &c);
        let corrupted = h_function_with_f(&l, &c, |lk, pk| {
            if lk == -1 && pk == -1 {
                -1.0
            } else if lk == -1 || pk == -1 {
                0.0
            } else {
                1.0
            }
        });
        assert!((good - corrupted).norm() > 1e-3);
    }
}
