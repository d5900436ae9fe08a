//! Closed forms of the correlation integrals against direct quadrature.

use fock_oracle::quadrature::{i_c_numeric, i_s_numeric};
use udw_core::{i_c, i_s};

/// 25 sample points spanning the support edge and both tails.
fn sample_points() -> [f64; 25] {
    [
        -6.0, -3.5, -2.5, -2.1, -1.9, -1.5, -1.0, -0.75, -0.5, -0.25, -0.1, -0.01, 0.0, 0.02, 0.3,
        0.6, 0.9, 1.2, 1.6, 1.95, 2.05, 2.4, 3.0, 4.5, 7.0,
    ]
}

#[test]
fn odd_closed_form_matches_quadrature() {
    for x in sample_points() {
        let closed = i_s(x);
        let numeric = i_s_numeric(x);
        assert!(
            (closed - numeric).abs() < 1e-8,
            "i_s({x}): closed {closed:.12e}, quadrature {numeric:.12e}"
        );
    }
}

#[test]
fn even_closed_form_matches_quadrature() {
    for x in sample_points() {
        let closed = i_c(x);
        let numeric = i_c_numeric(x);
        assert!(
            (closed - numeric).abs() < 1e-8,
            "i_c({x}): closed {closed:.12e}, quadrature {numeric:.12e}"
        );
    }
}

#[test]
fn exact_special_values() {
    assert_eq!(i_c(0.0), 0.25);
    assert_eq!(i_c(2.0), (5.0 - 8.0 * std::f64::consts::LN_2) / 12.0);
    assert_eq!(i_c(-2.0), i_c(2.0));
    assert_eq!(i_s(0.0), 0.0);
    assert_eq!(i_s(2.0), 0.0);
}
