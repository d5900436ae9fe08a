//! Closed forms of the two field-correlation integrals
//!
//! ```text
//! i_s(x) = ∫₀^∞ dk (sin k − k cos k)²/k⁵ · sin(kx)
//! i_c(x) = ∫₀^∞ dk (sin k − k cos k)²/k⁵ · cos(kx)
//! ```
//!
//! which arise from a hard-sphere spatial profile of unit radius for two
//! co-located detectors. `i_s` carries the field commutator and is exactly
//! supported on `|x| < 2` (twice the light-crossing time of the sphere);
//! `i_c` carries the vacuum fluctuations and decays only algebraically.

use std::f64::consts::PI;

/// Odd correlation integral: `(π/96)·x(2−|x|)²(4+|x|)` for `|x| < 2`,
/// identically zero outside.
pub fn i_s(x: f64) -> f64 {
    let ax = x.abs();
    if ax >= 2.0 {
        return 0.0;
    }
    (PI / 96.0) * x * (2.0 - ax) * (2.0 - ax) * (4.0 + ax)
}

/// Even correlation integral, with special values `i_c(0) = 1/4` and
/// `i_c(±2) = (5 − 8 ln 2)/12`; elsewhere a logarithmic closed form.
pub fn i_c(x: f64) -> f64 {
    let ax = x.abs();
    if ax == 0.0 {
        return 0.25;
    }
    if ax == 2.0 {
        return (5.0 - 8.0 * std::f64::consts::LN_2) / 12.0;
    }
    let x2 = x * x;
    let ln_ax = ax.ln();
    let ln_2p = (2.0 + ax).ln();
    let ln_2m = (ax - 2.0).abs().ln();
    (24.0 + 4.0 * x2 - 2.0 * x2 * (x2 - 12.0) * ln_ax - 16.0 * ax * ln_2p - 12.0 * x2 * ln_2p
        + x2 * x2 * ln_2p
        + ax * (ax - 2.0) * (ax - 2.0) * (4.0 + ax) * ln_2m)
        / 96.0
}
