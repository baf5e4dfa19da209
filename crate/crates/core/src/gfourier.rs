//! Numerical G-Fourier transform.
//!
//! Through the chart `x = tanh t` the Haar integral becomes a plain integral
//! over the line, so
//!
//! ```text
//! (F_G v)(xi) = int e^{2 i xi t} phi(t) dt,      phi(t) = v(tanh t),
//! (F_G^{-1} psi)(t) = (1/pi) int e^{-2 i xi t} psi(xi) d xi.
//! ```
//!
//! Both integrals are evaluated by the trapezoidal rule on uniform grids,
//! which converges spectrally for smooth, exponentially decaying integrands.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Outcome, Result, Warning};
use crate::special::sech;

/// Number of recurrence steps between exact re-evaluations of the phase.
const PHASE_BLOCK: usize = 64;

pub const DEFAULT_HALF_WIDTH: f64 = 20.0;
pub const DEFAULT_COUNT: usize = 4096;
pub const DEFAULT_XI_MAX: f64 = 8.0;
pub const DEFAULT_XI_COUNT: usize = 1025;
/// Relative magnitude of end samples above which a truncation warning is raised.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Uniform grid on `[-T, T)` in the line chart.
///
/// Unshifted nodes are `-T + j h`, shifted nodes are `-T + (j + 1/2) h`,
/// with `h = 2T / N`. The shifted grid is symmetric about 0 and has no node
/// there, which is what principal-value sums need.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineGrid {
    pub half_width: f64,
    pub count: usize,
    pub shifted: bool,
}

impl LineGrid {
    pub fn new(half_width: f64, count: usize) -> Result<Self> {
        Self::build(half_width, count, false)
    }

    pub fn shifted(half_width: f64, count: usize) -> Result<Self> {
        Self::build(half_width, count, true)
    }

    fn build(half_width: f64, count: usize, shifted: bool) -> Result<Self> {
        if !(half_width.is_finite() && half_width >= 1.0) {
            return Err(Error::InvalidGrid(format!(
                "half width must be finite and at least 1, got {half_width}"
            )));
        }
        if count < 16 || !count.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "node count must be a power of two no smaller than 16, got {count}"
            )));
        }
        Ok(LineGrid {
            half_width,
            count,
            shifted,
        })
    }

    pub fn to_shifted(self) -> Self {
        LineGrid {
            shifted: true,
            ..self
        }
    }

    pub fn to_unshifted(self) -> Self {
        LineGrid {
            shifted: false,
            ..self
        }
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.count as f64
    }

    #[inline]
    pub fn first(&self) -> f64 {
        let offset = if self.shifted { 0.5 } else { 0.0 };
        -self.half_width + offset * self.spacing()
    }

    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        self.first() + j as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|j| self.node(j)).collect()
    }

    /// Nodes mapped to the group, `x_j = tanh t_j`.
    pub fn group_nodes(&self) -> Vec<f64> {
        (0..self.count).map(|j| self.node(j).tanh()).collect()
    }
}

impl Default for LineGrid {
    fn default() -> Self {
        LineGrid {
            half_width: DEFAULT_HALF_WIDTH,
            count: DEFAULT_COUNT,
            shifted: false,
        }
    }
}

/// Uniform frequency grid covering `[-xi_max, xi_max]`.
///
/// Unshifted grids include both endpoints and are integrated with the
/// trapezoidal rule. Shifted grids use midpoints `-xi_max + (k + 1/2) dxi`,
/// `dxi = 2 xi_max / M`, and never contain `xi = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreqGrid {
    pub xi_max: f64,
    pub count: usize,
    pub shifted: bool,
}

impl FreqGrid {
    pub fn new(xi_max: f64, count: usize) -> Result<Self> {
        Self::build(xi_max, count, false)
    }

    pub fn shifted(xi_max: f64, count: usize) -> Result<Self> {
        Self::build(xi_max, count, true)
    }

    fn build(xi_max: f64, count: usize, shifted: bool) -> Result<Self> {
        if !(xi_max.is_finite() && xi_max > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "frequency range must be positive and finite, got {xi_max}"
            )));
        }
        if count < 16 {
            return Err(Error::InvalidGrid(format!(
                "frequency count must be at least 16, got {count}"
            )));
        }
        Ok(FreqGrid {
            xi_max,
            count,
            shifted,
        })
    }

    pub fn to_shifted(self) -> Self {
        FreqGrid {
            shifted: true,
            ..self
        }
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        if self.shifted {
            2.0 * self.xi_max / self.count as f64
        } else {
            2.0 * self.xi_max / (self.count - 1) as f64
        }
    }

    #[inline]
    pub fn first(&self) -> f64 {
        if self.shifted {
            -self.xi_max + 0.5 * self.spacing()
        } else {
            -self.xi_max
        }
    }

    #[inline]
    pub fn node(&self, k: usize) -> f64 {
        self.first() + k as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.node(k)).collect()
    }

    /// Quadrature weight of node `k`.
    #[inline]
    pub fn weight(&self, k: usize) -> f64 {
        let h = self.spacing();
        if !self.shifted && (k == 0 || k + 1 == self.count) {
            0.5 * h
        } else {
            h
        }
    }

    /// Index of an exact `xi = 0` node, if the grid has one.
    pub fn zero_index(&self) -> Option<usize> {
        if self.shifted || self.count.is_multiple_of(2) {
            None
        } else {
            Some(self.count / 2)
        }
    }
}

impl Default for FreqGrid {
    fn default() -> Self {
        FreqGrid {
            xi_max: DEFAULT_XI_MAX,
            count: DEFAULT_XI_COUNT,
            shifted: false,
        }
    }
}

/// Which chart the samples were produced in. The value arrays are identical
/// under the pullback, the tag only records how they were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// `values[j] = v(tanh t_j)` for a function `v` on G.
    Group,
    /// `values[j] = phi(t_j)`.
    Line,
    /// `values[j] = psi((1 + tanh t_j) / 2)` for a function on `(0, 1)`.
    HalfInterval,
}

/// Test functions named after their line-chart pullbacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    /// `sech t`, i.e. `sqrt(1 - x^2)`.
    Sech,
    /// `sech^2 t`, i.e. `1 - x^2`.
    Sech2,
    /// `exp(-t^2)`.
    Gauss,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::Sech, Builtin::Sech2, Builtin::Gauss];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Sech => "sech",
            Builtin::Sech2 => "sech2",
            Builtin::Gauss => "gauss",
        }
    }

    pub fn parse(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn eval(self, t: f64) -> f64 {
        match self {
            Builtin::Sech => sech(t),
            Builtin::Sech2 => sech(t).powi(2),
            Builtin::Gauss => (-t * t).exp(),
        }
    }

    /// Closed-form G-Fourier transform.
    pub fn exact_transform(self, xi: f64) -> Complex64 {
        let v = match self {
            Builtin::Sech => PI / (PI * xi).cosh(),
            Builtin::Sech2 => crate::special::two_pi_xi_over_sinh(xi),
            Builtin::Gauss => PI.sqrt() * (-xi * xi).exp(),
        };
        Complex64::new(v, 0.0)
    }
}

/// Complex samples of a function on a [`LineGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub grid: LineGrid,
    pub values: Vec<Complex64>,
    pub chart: Chart,
}

impl SampledFunction {
    pub fn new(grid: LineGrid, values: Vec<Complex64>, chart: Chart) -> Result<Self> {
        if values.len() != grid.count {
            return Err(Error::GridMismatch(format!(
                "{} samples for a grid of {} nodes",
                values.len(),
                grid.count
            )));
        }
        if let Some(v) = values.iter().find(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite(if v.re.is_finite() { v.im } else { v.re }));
        }
        Ok(SampledFunction {
            grid,
            values,
            chart,
        })
    }

    pub fn zeros(grid: LineGrid) -> Self {
        SampledFunction {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.count],
            chart: Chart::Line,
        }
    }

    /// Samples `phi(t_j)`.
    pub fn from_line(grid: LineGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.count).map(|j| f(grid.node(j))).collect();
        SampledFunction {
            grid,
            values,
            chart: Chart::Line,
        }
    }

    pub fn from_line_real(grid: LineGrid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_line(grid, |t| Complex64::new(f(t), 0.0))
    }

    /// Samples `v(tanh t_j)`. Near the ends of a wide grid `tanh t_j` rounds
    /// to `+-1`, so functions vanishing at the boundary are better supplied
    /// through [`SampledFunction::from_line`].
    pub fn from_group(grid: LineGrid, v: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.count).map(|j| v(grid.node(j).tanh())).collect();
        SampledFunction {
            grid,
            values,
            chart: Chart::Group,
        }
    }

    /// Samples `psi((1 + tanh t_j) / 2)` for a function on `(0, 1)`.
    pub fn from_half_interval(grid: LineGrid, psi: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.count)
            .map(|j| psi(0.5 * (1.0 + grid.node(j).tanh())))
            .collect();
        SampledFunction {
            grid,
            values,
            chart: Chart::HalfInterval,
        }
    }

    pub fn builtin(grid: LineGrid, b: Builtin) -> Self {
        Self::from_line_real(grid, |t| b.eval(t))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn nodes(&self) -> Vec<f64> {
        self.grid.nodes()
    }

    pub fn with_chart(mut self, chart: Chart) -> Self {
        self.chart = chart;
        self
    }

    /// Pointwise map `values[j] -> f(t_j, values[j])`.
    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Self {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(j, &v)| f(self.grid.node(j), v))
            .collect();
        SampledFunction {
            grid: self.grid,
            values,
            chart: self.chart,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|_, v| c * v)
    }

    fn check_grid(&self, other: &SampledFunction) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!(
                "{:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SampledFunction) -> Result<Self> {
        self.check_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(SampledFunction {
            grid: self.grid,
            values,
            chart: self.chart,
        })
    }

    pub fn sub(&self, other: &SampledFunction) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Largest sample magnitude.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `(int |phi|^2 dt)^{1/2}` by the trapezoidal rule.
    pub fn l2(&self) -> f64 {
        (self.grid.spacing() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// `||self - reference|| / ||reference||` in the grid L2 norm.
    pub fn relative_l2_error(&self, reference: &SampledFunction) -> Result<f64> {
        let diff = self.sub(reference)?.l2();
        let base = reference.l2();
        Ok(if base == 0.0 { diff } else { diff / base })
    }

    /// Magnitude of the end samples relative to the largest sample.
    pub fn end_magnitude(&self) -> f64 {
        end_magnitude(&self.values)
    }

    /// CSV with header `coordinate,re,im`; the coordinate is `t`.
    pub fn to_csv(&self) -> String {
        csv(self.grid.nodes().into_iter().zip(self.values.iter().copied()))
    }
}

/// Values of a transform on a [`FreqGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub freqs: FreqGrid,
    pub values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(freqs: FreqGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != freqs.count {
            return Err(Error::GridMismatch(format!(
                "{} spectral values for {} frequencies",
                values.len(),
                freqs.count
            )));
        }
        Ok(Spectrum { freqs, values })
    }

    pub fn from_fn(freqs: FreqGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..freqs.count).map(|k| f(freqs.node(k))).collect();
        Spectrum { freqs, values }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn end_magnitude(&self) -> f64 {
        end_magnitude(&self.values)
    }

    /// Pointwise product with `a(xi)`.
    pub fn multiply(&self, a: impl Fn(f64) -> Complex64) -> Spectrum {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(k, &v)| a(self.freqs.node(k)) * v)
            .collect();
        Spectrum {
            freqs: self.freqs,
            values,
        }
    }

    /// CSV with header `coordinate,re,im`; the coordinate is `xi`.
    pub fn to_csv(&self) -> String {
        csv(self.freqs.nodes().into_iter().zip(self.values.iter().copied()))
    }
}

pub(crate) fn csv(rows: impl Iterator<Item = (f64, Complex64)>) -> String {
    let mut out = String::from("coordinate,re,im\n");
    for (x, v) in rows {
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", x, v.re, v.im);
    }
    out
}

/// `max(|v_first|, |v_last|) / max |v|`, zero for an all-zero array.
pub fn end_magnitude(values: &[Complex64]) -> f64 {
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 || values.is_empty() {
        return 0.0;
    }
    let ends = values[0].norm().max(values[values.len() - 1].norm());
    ends / peak
}

/// `sum_k w_k exp(i omega (x0 + k dx))`, with the phase advanced by complex
/// rotation and re-anchored every [`PHASE_BLOCK`] terms.
pub(crate) fn phase_sum(x0: f64, dx: f64, weights: &[Complex64], omega: f64) -> Complex64 {
    let rot = Complex64::from_polar(1.0, omega * dx);
    let mut acc = Complex64::new(0.0, 0.0);
    for (b, chunk) in weights.chunks(PHASE_BLOCK).enumerate() {
        let x = x0 + (b * PHASE_BLOCK) as f64 * dx;
        let mut ph = Complex64::from_polar(1.0, omega * x);
        for w in chunk {
            acc += w * ph;
            ph *= rot;
        }
    }
    acc
}

/// Trapezoidal line transform `h sum_j e^{i omega t_j} values[j]`, with the
/// sum continued geometrically past both grid ends.
///
/// The continuation takes the ratio `rho` of the last two samples at each end
/// and adds `h f_end sum_{k>=1} (rho e^{+-i omega h})^k e^{i omega t_end}`.
/// For tails of the form `A e^{-lambda |t|}`, the decay of every pullback of
/// an algebraic function of `x`, this restores the infinite trapezoidal sum;
/// ends that are zero or not decaying are left uncorrected.
pub fn line_transform(grid: &LineGrid, values: &[Complex64], omega: f64) -> Complex64 {
    let h = grid.spacing();
    let n = values.len();
    let mut sum = phase_sum(grid.first(), h, values, omega);
    if n >= 2 {
        sum += tail_continuation(values[n - 1], values[n - 2], grid.node(n - 1), h, omega);
        sum += tail_continuation(values[0], values[1], grid.first(), -h, omega);
    }
    h * sum
}

/// Largest end-sample ratio treated as a decaying geometric tail.
const TAIL_RATIO_MAX: f64 = 0.999;

fn tail_continuation(end: Complex64, inner: Complex64, t_end: f64, step: f64, omega: f64) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    if end == zero || inner == zero {
        return zero;
    }
    let rho = end / inner;
    if !(rho.norm() < TAIL_RATIO_MAX) {
        return zero;
    }
    let q = rho * Complex64::from_polar(1.0, omega * step);
    end * Complex64::from_polar(1.0, omega * t_end) * q / (1.0 - q)
}

/// Transform of the grid samples at a single frequency, without end checks.
pub fn transform_at(f: &SampledFunction, xi: f64) -> Complex64 {
    line_transform(&f.grid, &f.values, 2.0 * xi)
}

/// G-transform of `erf(t)`, i.e. `i e^{-xi^2} / xi` away from the origin.
pub fn erf_transform(xi: f64) -> Result<Complex64> {
    if xi == 0.0 {
        return Err(Error::Pole(0.0));
    }
    Ok(Complex64::new(0.0, (-xi * xi).exp() / xi))
}

/// Forward and inverse transform on a fixed frequency grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transform {
    pub freqs: FreqGrid,
    /// Relative end-sample magnitude that triggers a truncation warning.
    pub tolerance: f64,
}

impl Default for Transform {
    fn default() -> Self {
        Transform {
            freqs: FreqGrid::default(),
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl Transform {
    pub fn new(freqs: FreqGrid) -> Self {
        Transform {
            freqs,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tolerance(self, tolerance: f64) -> Self {
        Transform { tolerance, ..self }
    }

    pub fn with_freqs(self, freqs: FreqGrid) -> Self {
        Transform { freqs, ..self }
    }

    fn truncation(&self, stage: &str, magnitude: f64) -> Option<Warning> {
        (magnitude > self.tolerance).then(|| Warning::Truncation {
            stage: stage.to_string(),
            magnitude,
            tolerance: self.tolerance,
        })
    }

    fn spectrum_of(&self, f: &SampledFunction) -> Vec<Complex64> {
        let freqs = self.freqs;
        (0..freqs.count)
            .into_par_iter()
            .map(|k| transform_at(f, freqs.node(k)))
            .collect()
    }

    /// `F_G f` on the frequency grid.
    pub fn forward(&self, f: &SampledFunction) -> Outcome<Spectrum> {
        let values = self.spectrum_of(f);
        let warnings = self
            .truncation("forward transform", f.end_magnitude())
            .into_iter()
            .collect();
        Outcome::with_warnings(
            Spectrum {
                freqs: self.freqs,
                values,
            },
            warnings,
        )
    }

    /// Forward transform of samples tending to `left` and `right` as
    /// `t -> -inf` and `t -> +inf`.
    ///
    /// The step `d erf(t)`, `d = (right - left) / 2`, is subtracted and its
    /// transform added back analytically. A non-zero mean `(left + right)/2`
    /// would produce a point mass at the origin and is rejected, as is a
    /// frequency grid containing `xi = 0` when `d != 0`.
    pub fn forward_with_limits(
        &self,
        f: &SampledFunction,
        left: Complex64,
        right: Complex64,
    ) -> Result<Outcome<Spectrum>> {
        let d = limit_step(left, right)?;
        if d != Complex64::new(0.0, 0.0) && self.freqs.zero_index().is_some() {
            return Err(Error::Pole(0.0));
        }
        let rest = f.map(|t, v| v - d * libm::erf(t));
        let mut out = self.forward(&rest);
        for (k, v) in out.value.values.iter_mut().enumerate() {
            *v += d * erf_transform(self.freqs.node(k))?;
        }
        Ok(out)
    }

    /// Principal-value transform of `p(y) / y`.
    ///
    /// `p` must be sampled on a shifted grid: `t` and `-t` then pair up and
    /// the odd singular part cancels exactly in the sum.
    pub fn forward_pv(&self, p: &SampledFunction) -> Result<Outcome<Spectrum>> {
        Ok(self.forward(&pv_quotient(p)?))
    }

    /// [`Transform::forward_pv`] for a quotient `p(y)/y` with non-zero limits
    /// at `t -> -inf` and `t -> +inf`.
    pub fn forward_pv_with_limits(
        &self,
        p: &SampledFunction,
        left: Complex64,
        right: Complex64,
    ) -> Result<Outcome<Spectrum>> {
        self.forward_with_limits(&pv_quotient(p)?, left, right)
    }

    /// `(1/pi) int e^{-2 i xi t} psi(xi) d xi` at the nodes of `grid`.
    pub fn inverse(&self, spectrum: &Spectrum, grid: LineGrid) -> Outcome<SampledFunction> {
        let freqs = spectrum.freqs;
        let weighted: Vec<Complex64> = spectrum
            .values
            .iter()
            .enumerate()
            .map(|(k, v)| v * freqs.weight(k))
            .collect();
        let values = (0..grid.count)
            .into_par_iter()
            .map(|j| {
                phase_sum(freqs.first(), freqs.spacing(), &weighted, -2.0 * grid.node(j)) / PI
            })
            .collect();
        let warnings = self
            .truncation("inverse transform", spectrum.end_magnitude())
            .into_iter()
            .collect();
        Outcome::with_warnings(
            SampledFunction {
                grid,
                values,
                chart: Chart::Line,
            },
            warnings,
        )
    }

    /// `(F_G phi, F_G psi)_R / (phi, psi)_G`, which equals `pi`.
    pub fn parseval_ratio(&self, phi: &SampledFunction, psi: &SampledFunction) -> Result<Complex64> {
        phi.check_grid(psi)?;
        let h = phi.grid.spacing();
        let denom: Complex64 = phi
            .values
            .iter()
            .zip(&psi.values)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            * h;
        let scale = phi.l2() * psi.l2();
        if denom.norm() < 1e-12 * scale.max(1.0) {
            return Err(Error::Degenerate(denom.norm()));
        }
        let fa = self.spectrum_of(phi);
        let fb = self.spectrum_of(psi);
        let num: Complex64 = fa
            .iter()
            .zip(&fb)
            .enumerate()
            .map(|(k, (a, b))| a * b.conj() * self.freqs.weight(k))
            .sum();
        Ok(num / denom)
    }
}

fn limit_step(left: Complex64, right: Complex64) -> Result<Complex64> {
    let mean = 0.5 * (left + right);
    if mean.norm() > 0.0 {
        return Err(Error::Invalid(format!(
            "limits {left} and {right} have non-zero mean; the transform has a point mass at the origin"
        )));
    }
    Ok(0.5 * (right - left))
}

fn pv_quotient(p: &SampledFunction) -> Result<SampledFunction> {
    if !p.grid.shifted {
        return Err(Error::InvalidGrid(
            "principal-value transform needs a shifted grid without a node at t = 0".into(),
        ));
    }
    Ok(p.map(|t, v| v / t.tanh()))
}
