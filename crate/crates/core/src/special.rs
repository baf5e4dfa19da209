//! Elementary functions with removable singularities handled by series.

use std::f64::consts::PI;

/// Below this `|xi|` the quotient forms switch to their Taylor series.
pub const SERIES_CUTOFF: f64 = 1e-4;

#[inline]
pub fn sech(t: f64) -> f64 {
    1.0 / t.cosh()
}

/// `<xi> = (1 + xi^2)^{1/2}`.
#[inline]
pub fn bracket(xi: f64) -> f64 {
    xi.hypot(1.0)
}

/// `xi * coth(pi xi)`, equal to `1/pi` at the origin.
pub fn xi_coth_pi(xi: f64) -> f64 {
    if xi.abs() < SERIES_CUTOFF {
        let z2 = (PI * xi).powi(2);
        (1.0 + z2 / 3.0 - z2 * z2 / 45.0 + 2.0 * z2 * z2 * z2 / 945.0) / PI
    } else {
        xi / (PI * xi).tanh()
    }
}

/// `2 pi xi / sinh(pi xi)`, equal to 2 at the origin.
pub fn two_pi_xi_over_sinh(xi: f64) -> f64 {
    let z = PI * xi;
    if xi.abs() < SERIES_CUTOFF {
        let z2 = z * z;
        2.0 * (1.0 - z2 / 6.0 + 7.0 * z2 * z2 / 360.0)
    } else if z.abs() > 700.0 {
        0.0
    } else {
        2.0 * z / z.sinh()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_match_direct_formula_at_cutoff() {
        for xi in [SERIES_CUTOFF * 0.999, -SERIES_CUTOFF * 0.999] {
            let direct = xi / (PI * xi).tanh();
            assert!((xi_coth_pi(xi) - direct).abs() < 1e-14);
            let direct = 2.0 * PI * xi / (PI * xi).sinh();
            assert!((two_pi_xi_over_sinh(xi) - direct).abs() < 1e-14);
        }
        assert_eq!(xi_coth_pi(0.0), 1.0 / PI);
        assert_eq!(two_pi_xi_over_sinh(0.0), 2.0);
    }

    #[test]
    fn far_tails_are_finite() {
        assert_eq!(two_pi_xi_over_sinh(1e4), 0.0);
        assert!((xi_coth_pi(300.0) - 300.0).abs() < 1e-12);
        assert_eq!(sech(1e3), 0.0);
    }
}
