//! Quadrature oracles that work directly in the group variables and do not
//! go through the spectral machinery of the crate.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre rule on `[a, b]` with `panels` equal panels.
pub struct Composite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Composite {
    pub fn new(a: f64, b: f64, panels: usize, order: usize) -> Self {
        let (x, w) = gauss_legendre(order);
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * order);
        let mut weights = Vec::with_capacity(panels * order);
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(mid + 0.5 * h * xi);
                weights.push(0.5 * h * wi);
            }
        }
        Composite { nodes, weights }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `PV int_{-1}^{1} u(y) / (y - x) dy` for a polynomial-like `u`, by
/// subtracting `u(x)` and integrating the log term exactly.
pub fn pv_cauchy_direct(u: impl Fn(f64) -> f64, x: f64) -> f64 {
    let rule = Composite::new(-1.0, 1.0, 8, 20);
    let ux = u(x);
    let regular = rule.integrate(|y| (u(y) - ux) / (y - x));
    regular + ux * ((1.0 - x) / (1.0 + x)).ln()
}

/// `x o y` computed from the definition.
pub fn compose(x: f64, y: f64) -> f64 {
    (x + y) / (1.0 + x * y)
}

/// Group convolution `int k0(x o (-y)) u(y) dy/(1 - y^2)` by direct
/// quadrature. The integral is taken over `y = tanh s`, which turns the
/// measure into `ds` but leaves the kernel in its group form.
pub fn group_convolution_direct(k0: impl Fn(f64) -> f64, u: impl Fn(f64) -> f64, x: f64, s_max: f64) -> f64 {
    let rule = Composite::new(-s_max, s_max, 160, 16);
    rule.integrate(|s| {
        let y = s.tanh();
        k0(compose(x, -y)) * u(y)
    })
}
