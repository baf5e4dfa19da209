//! The multiplicative group G = (-1, 1) with `x o y = (x + y) / (1 + xy)`.
//!
//! G is isomorphic to the additive real line through the chart
//! `t = atanh(x)`, `x = tanh(t)`. The Haar measure is `dx / (1 - x^2)`, which
//! the chart turns into plain `dt`, and the characters are
//! `((1 + x) / (1 - x))^{i xi} = exp(2 i xi t)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Points with `|x| > 1 - BOUNDARY_EPS` are rejected.
pub const BOUNDARY_EPS: f64 = 1e-15;

/// An element of G.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct GroupPoint(f64);

/// A coordinate on the real line, the image of G under `atanh`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LinePoint(f64);

impl GroupPoint {
    pub const IDENTITY: GroupPoint = GroupPoint(0.0);

    pub fn new(x: f64) -> Result<Self> {
        if x.is_finite() && x.abs() <= 1.0 - BOUNDARY_EPS {
            Ok(GroupPoint(x))
        } else {
            Err(Error::OutOfGroup(x))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn inverse(self) -> GroupPoint {
        GroupPoint(-self.0)
    }

    /// `(a + b) / (1 + ab)`.
    pub fn compose(self, other: GroupPoint) -> Result<GroupPoint> {
        let (a, b) = (self.0, other.0);
        GroupPoint::new((a + b) / (1.0 + a * b)).map_err(|_| Error::BoundaryOverflow)
    }

    pub fn to_line(self) -> LinePoint {
        LinePoint(self.0.atanh())
    }

    pub fn from_line(q: LinePoint) -> Result<GroupPoint> {
        GroupPoint::new(q.0.tanh())
    }

    /// Density of the invariant measure, `1 / (1 - x^2)`.
    pub fn haar_weight(self) -> f64 {
        1.0 / ((1.0 - self.0) * (1.0 + self.0))
    }

    /// The character `C(x, xi)`, evaluated as `exp(2 i xi atanh x)`.
    pub fn character(self, xi: f64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * xi * self.0.atanh())
    }
}

impl LinePoint {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() {
            Ok(LinePoint(t))
        } else {
            Err(Error::NonFinite(t))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn compose(a: GroupPoint, b: GroupPoint) -> Result<GroupPoint> {
    a.compose(b)
}

pub fn to_line(p: GroupPoint) -> LinePoint {
    p.to_line()
}

pub fn from_line(q: LinePoint) -> Result<GroupPoint> {
    GroupPoint::from_line(q)
}

pub fn haar_weight(p: GroupPoint) -> f64 {
    p.haar_weight()
}

pub fn character(p: GroupPoint, xi: f64) -> Complex64 {
    p.character(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(x: f64) -> GroupPoint {
        GroupPoint::new(x).unwrap()
    }

    #[test]
    fn compose_examples() {
        for y in [-0.7, 0.0, 0.25, 0.9] {
            assert_eq!(g(0.0).compose(g(y)).unwrap().value(), y);
            assert_eq!(g(y).compose(g(y).inverse()).unwrap().value(), 0.0);
        }
        assert!((g(0.5).compose(g(0.5)).unwrap().value() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn construction_rejects_boundary() {
        assert!(GroupPoint::new(1.0).is_err());
        assert!(GroupPoint::new(-1.0).is_err());
        assert!(GroupPoint::new(f64::NAN).is_err());
        assert!(GroupPoint::new(1.0 - 1e-16).is_err());
        assert!(GroupPoint::new(1.0 - 2e-15).is_ok());
        assert!(LinePoint::new(f64::INFINITY).is_err());
    }

    #[test]
    fn compose_overflow_near_boundary() {
        let a = g(1.0 - 2e-15);
        assert_eq!(a.compose(a), Err(Error::BoundaryOverflow));
    }

    #[test]
    fn chart_examples() {
        assert_eq!(g(0.0).to_line().value(), 0.0);
        let back = GroupPoint::from_line(g(0.9).to_line()).unwrap();
        assert!((back.value() - 0.9).abs() < 1e-15);
        // tanh(1) from its exponential definition
        let e2 = (2.0f64).exp();
        let tanh1 = (e2 - 1.0) / (e2 + 1.0);
        let x = GroupPoint::from_line(LinePoint::new(1.0).unwrap()).unwrap();
        assert!((x.value() - tanh1).abs() < 1e-15);
        assert!((x.value() - 0.761594).abs() < 1e-6);
    }

    #[test]
    fn haar_examples() {
        assert_eq!(g(0.0).haar_weight(), 1.0);
        assert!((g(0.5).haar_weight() - 4.0 / 3.0).abs() < 1e-15);
        for x in [1.0 - BOUNDARY_EPS, -(1.0 - BOUNDARY_EPS)] {
            let w = g(x).haar_weight();
            assert!(w.is_finite() && w > 1e14);
        }
    }

    #[test]
    fn character_examples() {
        assert_eq!(g(0.0).character(3.7), Complex64::new(1.0, 0.0));
        assert_eq!(g(0.6).character(0.0), Complex64::new(1.0, 0.0));
        let p = g(0.3).compose(g(0.5)).unwrap();
        let lhs = p.character(1.2);
        let rhs = g(0.3).character(1.2) * g(0.5).character(1.2);
        assert!((lhs - rhs).norm() <= 1e-14);
    }

    // 7-point central difference, sixth order.
    fn derivative(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let d = 1e-3;
        let c = [1.0 / 60.0, -3.0 / 20.0, 3.0 / 4.0];
        let mut s = 0.0;
        for (k, ck) in c.iter().enumerate() {
            let j = (3 - k) as f64;
            s += ck * (f(x + j * d) - f(x - j * d));
        }
        s / d
    }

    proptest! {
        #[test]
        fn associativity(a in -0.95f64..0.95, b in -0.95f64..0.95, c in -0.95f64..0.95) {
            let (a, b, c) = (g(a), g(b), g(c));
            let left = a.compose(b).unwrap().compose(c).unwrap();
            let right = a.compose(b.compose(c).unwrap()).unwrap();
            prop_assert!((left.value() - right.value()).abs() <= 1e-14);
        }

        #[test]
        fn chart_homomorphism(s in -4.0f64..4.0, t in -4.0f64..4.0) {
            prop_assume!((s + t).abs() <= 4.0);
            let a = GroupPoint::from_line(LinePoint::new(s).unwrap()).unwrap();
            let b = GroupPoint::from_line(LinePoint::new(t).unwrap()).unwrap();
            let sum = a.compose(b).unwrap().to_line().value();
            let expect = a.to_line().value() + b.to_line().value();
            prop_assert!((sum - expect).abs() <= 1e-12, "{} vs {}", sum, expect);
        }

        #[test]
        fn character_is_unimodular(x in -0.999f64..0.999, xi in -50.0f64..50.0) {
            prop_assert!((g(x).character(xi).norm() - 1.0).abs() <= 1e-14);
        }

        #[test]
        fn measure_invariance(x in -0.6f64..0.6, y in -0.6f64..0.6) {
            let jac = derivative(|s| (s + y) / (1.0 + s * y), x);
            let moved = g(x).compose(g(y)).unwrap();
            let lhs = jac * moved.haar_weight();
            let rhs = g(x).haar_weight();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs, "{} vs {}", lhs, rhs);
        }
    }
}
