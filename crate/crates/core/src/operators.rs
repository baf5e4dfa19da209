//! Convolution operators `W_a = F_G^{-1} a F_G` and related operators.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Outcome, Result, Warning};
use crate::gfourier::{LineGrid, SampledFunction, Spectrum, Transform};
use crate::group::GroupPoint;
use crate::special::sech;
use crate::symbols::Symbol;

/// Relative end-sample magnitude above which decay is considered violated.
pub const DECAY_LIMIT: f64 = 1e-6;

/// `W_a` on a fixed frequency grid.
#[derive(Debug, Clone)]
pub struct ConvolutionOperator {
    pub symbol: Symbol,
    pub transform: Transform,
}

impl ConvolutionOperator {
    pub fn new(symbol: Symbol, transform: Transform) -> Self {
        ConvolutionOperator { symbol, transform }
    }

    /// `F_G^{-1} [a F_G u]` on the grid of `u`.
    pub fn apply(&self, u: &SampledFunction) -> Result<Outcome<SampledFunction>> {
        let mut warnings = Vec::new();
        let spec = self.transform.forward(u).collect_into(&mut warnings);
        let values = self.symbol.sample(&spec.freqs)?;
        let spec = Spectrum {
            freqs: spec.freqs,
            values: spec.values.iter().zip(&values).map(|(s, a)| s * a).collect(),
        };
        let out = self.transform.inverse(&spec, u.grid).collect_into(&mut warnings);
        Ok(Outcome::with_warnings(out.with_chart(u.chart), warnings))
    }
}

pub fn apply_symbol(tr: &Transform, a: &Symbol, u: &SampledFunction) -> Result<Outcome<SampledFunction>> {
    ConvolutionOperator::new(a.clone(), *tr).apply(u)
}

/// `(D_G)^k u` with `D_G = (1 - x^2) d/dx`, through its symbol `(-2 i xi)^k`.
pub fn d_g(tr: &Transform, u: &SampledFunction, k: usize) -> Result<Outcome<SampledFunction>> {
    if k == 0 {
        return Ok(Outcome::new(u.clone()));
    }
    apply_symbol(tr, &Symbol::derivative(k), u)
}

/// Bessel potential `Lambda^s u` with symbol `<xi>^s`.
pub fn bessel(tr: &Transform, s: f64, u: &SampledFunction) -> Result<Outcome<SampledFunction>> {
    if s == 0.0 {
        return Ok(Outcome::new(u.clone()));
    }
    apply_symbol(tr, &Symbol::bessel(s), u)
}

/// Group convolution `int k0((x - y)/(1 - xy)) u(y) dG(y)` via the
/// convolution theorem.
pub fn convolve(
    tr: &Transform,
    k0: &SampledFunction,
    u: &SampledFunction,
) -> Result<Outcome<SampledFunction>> {
    if k0.grid != u.grid {
        return Err(Error::GridMismatch(format!(
            "kernel on {:?}, function on {:?}",
            k0.grid, u.grid
        )));
    }
    let mut warnings = Vec::new();
    let fk = tr.forward(k0).collect_into(&mut warnings);
    let fu = tr.forward(u).collect_into(&mut warnings);
    let spec = Spectrum {
        freqs: fu.freqs,
        values: fk.values.iter().zip(&fu.values).map(|(a, b)| a * b).collect(),
    };
    let out = tr.inverse(&spec, u.grid).collect_into(&mut warnings);
    Ok(Outcome::with_warnings(out, warnings))
}

/// `F(u) = (1 / pi i) int y u(y) dG(y)`.
pub fn cauchy_functional(u: &SampledFunction) -> Complex64 {
    let h = u.grid.spacing();
    let s: Complex64 = u
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| v * u.grid.node(j).tanh())
        .sum();
    s * h / Complex64::new(0.0, PI)
}

/// Cauchy singular operator `S_G u(x) = (1 / pi i) PV int u(y) / (y - x) dy`.
///
/// Evaluated as `W_{-coth(pi xi)} u - F(u)`. The symbol is applied on a
/// midpoint frequency grid, so the pole at `xi = 0` is never sampled and the
/// symmetric sum realises the principal value.
pub fn cauchy_singular(tr: &Transform, u: &SampledFunction) -> Result<Outcome<SampledFunction>> {
    let end = u.end_magnitude();
    if end > DECAY_LIMIT {
        return Err(Error::NonDecaying {
            what: "argument of the Cauchy operator".into(),
            magnitude: end,
        });
    }
    let mut freqs = tr.freqs.to_shifted();
    if freqs.count % 2 == 1 {
        freqs.count -= 1;
    }
    let tr = tr.with_freqs(freqs);
    let mut warnings = Vec::new();
    let spec = tr.forward(u).collect_into(&mut warnings);
    let spec = spec.multiply(|xi| Complex64::new(-1.0 / (PI * xi).tanh(), 0.0));
    let w = tr.inverse(&spec, u.grid).collect_into(&mut warnings);
    let f = cauchy_functional(u);
    let out = w.map(|_, v| v - f).with_chart(u.chart);
    Ok(Outcome::with_warnings(out, warnings))
}

/// Translation `(tau_y u)(x) = u(x o y)`, which in the line chart is
/// `phi(t + atanh y)`. Samples are resampled by cubic Lagrange interpolation;
/// points leaving the grid read as zero.
pub fn shift(u: &SampledFunction, y: GroupPoint) -> SampledFunction {
    let s = y.to_line().value();
    let grid = u.grid;
    let h = grid.spacing();
    let n = grid.count as isize;
    let at = |i: isize| {
        if (0..n).contains(&i) {
            u.values[i as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    u.map(|t, _| {
        let pos = (t + s - grid.first()) / h;
        let i = pos.floor() as isize;
        let w = pos - i as f64;
        // nodes i-1, i, i+1, i+2
        let l = [
            -w * (w - 1.0) * (w - 2.0) / 6.0,
            (w + 1.0) * (w - 1.0) * (w - 2.0) / 2.0,
            -(w + 1.0) * w * (w - 2.0) / 2.0,
            (w + 1.0) * w * (w - 1.0) / 6.0,
        ];
        (0..4).map(|k| l[k] * at(i - 1 + k as isize)).sum()
    })
}

/// `PV int_{-1}^{1} w(y) / (y - x_i) dy` at the grid node `x_i = tanh t_i`.
///
/// `density` holds `w(tanh t_j) sech^2 t_j`, the integrand of `dy` pulled
/// back to `dt`; passing the density instead of `w` keeps functions that
/// grow towards `+-1` usable. The value is computed from
/// `PV int w/(y - x) = int (w(y) - w(x))/(y - x) dy + w(x) ln((1-x)/(1+x))`
/// by the trapezoidal rule in `t`; the removable value of the integrand at
/// the node is `dw/dt(t_i)`, taken from a fourth-order central difference.
/// `i` must be at least two nodes away from the grid ends.
pub fn pv_cauchy_at_node(grid: &LineGrid, density: &[Complex64], i: usize) -> Complex64 {
    let h = grid.spacing();
    let ti = grid.node(i);
    let w = |k: usize| density[k] * grid.node(k).cosh().powi(2);
    let wi = w(i);
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, gj) in density.iter().enumerate() {
        if j == i {
            continue;
        }
        let tj = grid.node(j);
        // y_j - x_i without cancellation
        let dy = (tj - ti).sinh() / (ti.cosh() * tj.cosh());
        acc += (gj - wi * sech(tj).powi(2)) / dy;
    }
    let dw = (w(i - 2) - 8.0 * w(i - 1) + 8.0 * w(i + 1) - w(i + 2)) / (12.0 * h);
    h * (acc + dw) + wi * (-2.0 * ti)
}

/// `int_{-1}^{1} w(y) k(x_i, y) dy` for a smooth kernel, with `density`
/// as in [`pv_cauchy_at_node`].
pub fn integrate_at_node(
    grid: &LineGrid,
    density: &[Complex64],
    i: usize,
    kernel: impl Fn(f64, f64) -> f64,
) -> Complex64 {
    let xi = grid.node(i).tanh();
    density
        .iter()
        .enumerate()
        .map(|(j, g)| g * kernel(xi, grid.node(j).tanh()))
        .sum::<Complex64>()
        * grid.spacing()
}

/// Collects a truncation warning when `f` is not negligible at the grid
/// ends, and fails when it is far from decaying.
pub(crate) fn check_decay(what: &str, f: &SampledFunction, tolerance: f64) -> Result<Vec<Warning>> {
    let end = f.end_magnitude();
    if end > DECAY_LIMIT {
        return Err(Error::NonDecaying {
            what: what.to_string(),
            magnitude: end,
        });
    }
    Ok(if end > tolerance {
        vec![Warning::Truncation {
            stage: what.to_string(),
            magnitude: end,
            tolerance,
        }]
    } else {
        Vec::new()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfourier::{Builtin, LineGrid};
    use crate::special::sech;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn setup() -> (Transform, LineGrid) {
        (Transform::default(), LineGrid::default())
    }

    #[test]
    fn identity_and_derivative() {
        let (tr, grid) = setup();
        let u = SampledFunction::builtin(grid, Builtin::Sech2);
        let id = apply_symbol(&tr, &Symbol::constant(c(1.0)), &u).unwrap().value;
        assert!(id.relative_l2_error(&u).unwrap() < 1e-8);
        // D_G (1 - x^2) = -2x (1 - x^2)
        let du = d_g(&tr, &u, 1).unwrap().value;
        let exact = SampledFunction::from_line_real(grid, |t| -2.0 * t.tanh() * sech(t).powi(2));
        assert!(du.relative_l2_error(&exact).unwrap() < 1e-8);
        // D_G sqrt(1 - x^2) = -x sqrt(1 - x^2)
        let v = SampledFunction::builtin(grid, Builtin::Sech);
        let dv = d_g(&tr, &v, 1).unwrap().value;
        let exact = SampledFunction::from_line_real(grid, |t| -t.tanh() * sech(t));
        assert!(dv.relative_l2_error(&exact).unwrap() < 1e-7);
        assert_eq!(d_g(&tr, &v, 0).unwrap().value, v);
    }

    #[test]
    fn chart_identity_for_derivative() {
        let (tr, grid) = setup();
        let u = SampledFunction::builtin(grid, Builtin::Gauss);
        let du = d_g(&tr, &u, 1).unwrap().value;
        let h = grid.spacing();
        for j in (100..grid.count - 100).step_by(97) {
            let fd = (u.values[j + 1] - u.values[j - 1]) / (2.0 * h);
            assert!((fd - du.values[j]).norm() < 1e-4);
            let fd4 = (u.values[j - 2] - 8.0 * u.values[j - 1] + 8.0 * u.values[j + 1]
                - u.values[j + 2])
                / (12.0 * h);
            assert!((fd4 - du.values[j]).norm() < 1e-6);
        }
    }

    #[test]
    fn composition_laws() {
        let (tr, grid) = setup();
        let u = SampledFunction::builtin(grid, Builtin::Gauss);
        let a = Symbol::tricomi(c(2.0), c(0.5), c(0.3));
        let b = Symbol::bessel(-1.0);
        let ab = apply_symbol(&tr, &a.clone().times(b.clone()), &u).unwrap().value;
        let a_b = apply_symbol(&tr, &a, &apply_symbol(&tr, &b, &u).unwrap().value)
            .unwrap()
            .value;
        assert!(a_b.relative_l2_error(&ab).unwrap() < 1e-8);

        let d2 = d_g(&tr, &u, 2).unwrap().value;
        let dd = d_g(&tr, &d_g(&tr, &u, 1).unwrap().value, 1).unwrap().value;
        assert!(dd.relative_l2_error(&d2).unwrap() < 1e-8);

        let back = bessel(&tr, 2.0, &bessel(&tr, -2.0, &u).unwrap().value).unwrap().value;
        assert!(back.relative_l2_error(&u).unwrap() < 1e-8);
        assert_eq!(bessel(&tr, 0.0, &u).unwrap().value, u);
    }

    #[test]
    fn bessel_multiplies_spectrum() {
        let (tr, grid) = setup();
        let u = SampledFunction::builtin(grid, Builtin::Sech);
        let lu = bessel(&tr, 2.0, &u).unwrap().value;
        let spec = tr.forward(&lu).value;
        for (k, v) in spec.values.iter().enumerate().step_by(64) {
            let xi = spec.freqs.node(k);
            let expect = (1.0 + xi * xi) * PI / (PI * xi).cosh();
            assert!((v - c(expect)).norm() < 1e-7, "xi={xi}");
        }
    }

    #[test]
    fn convolution_properties() {
        let (tr, grid) = setup();
        let k = SampledFunction::builtin(grid, Builtin::Sech);
        let u = SampledFunction::from_line_real(grid, |t| (-(t - 1.0).powi(2)).exp());
        let ku = convolve(&tr, &k, &u).unwrap().value;
        let uk = convolve(&tr, &u, &k).unwrap().value;
        assert!(ku.relative_l2_error(&uk).unwrap() < 1e-8);
        let zero = convolve(&tr, &k, &SampledFunction::zeros(grid)).unwrap().value;
        assert_eq!(zero.max_abs(), 0.0);
        let l1 = k.values.iter().map(|v| v.norm()).sum::<f64>() * grid.spacing();
        assert!(ku.l2() <= l1 * u.l2());
    }

    #[test]
    fn cauchy_of_even_and_zero() {
        let (tr, grid) = setup();
        let u = SampledFunction::builtin(grid, Builtin::Sech2);
        assert!(cauchy_functional(&u).norm() < 1e-14);
        let z = cauchy_singular(&tr, &SampledFunction::zeros(grid)).unwrap().value;
        assert_eq!(z.max_abs(), 0.0);
        let flat = SampledFunction::from_line_real(grid, |_| 1.0);
        assert!(matches!(cauchy_singular(&tr, &flat), Err(Error::NonDecaying { .. })));
    }

    #[test]
    fn cauchy_matches_closed_form() {
        // (1/pi i) PV int (1 - y^2)/(y - x) dy = (1/pi i)[-2x + (1 - x^2) ln((1-x)/(1+x))]
        let (tr, grid) = setup();
        let u = SampledFunction::builtin(grid, Builtin::Sech2);
        let s = cauchy_singular(&tr, &u).unwrap().value;
        for j in (256..grid.count - 256).step_by(111) {
            let t = grid.node(j);
            let x = t.tanh();
            let exact = Complex64::new(0.0, -1.0 / PI) * (-2.0 * x + (1.0 - x * x) * (-2.0 * t));
            assert!((s.values[j] - exact).norm() < 1e-8, "t={t}");
        }
        // the quadrature helper agrees as well
        for j in (512..grid.count - 512).step_by(301) {
            let t = grid.node(j);
            let x = t.tanh();
            let density: Vec<Complex64> = u.values.iter().enumerate().map(|(k, v)| v * sech(grid.node(k)).powi(2)).collect();
            let pv = pv_cauchy_at_node(&grid, &density, j);
            let exact = -2.0 * x + (1.0 - x * x) * (-2.0 * t);
            assert!((pv - c(exact)).norm() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn translation_commutes_with_operators() {
        let (tr, grid) = setup();
        let u = SampledFunction::builtin(grid, Builtin::Gauss);
        let y = GroupPoint::new(0.3).unwrap();
        let a = Symbol::prandtl(c(1.0), c(0.5)).inverse();
        let lhs = shift(&apply_symbol(&tr, &a, &u).unwrap().value, y);
        let rhs = apply_symbol(&tr, &a, &shift(&u, y)).unwrap().value;
        assert!(lhs.relative_l2_error(&rhs).unwrap() < 1e-6);
        // shift is a translation of the pullback
        let s = y.to_line().value();
        let exact = SampledFunction::from_line_real(grid, |t| (-(t + s).powi(2)).exp());
        assert!(shift(&u, y).relative_l2_error(&exact).unwrap() < 1e-7);
    }
}
