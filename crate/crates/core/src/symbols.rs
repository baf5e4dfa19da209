//! Symbols `a(xi)` of convolution operators on G and their analysis.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Outcome, Result, Warning};
use crate::gfourier::{transform_at, FreqGrid, SampledFunction, Spectrum, DEFAULT_TOLERANCE};
use crate::special::{bracket, sech, xi_coth_pi};

/// Margins at or below this value declare a symbol non-elliptic.
pub const EPS_ELLIPTIC: f64 = 1e-10;
/// The ellipticity scan covers `[-SCAN_RANGE, SCAN_RANGE]`.
pub const SCAN_RANGE: f64 = 8.0;
pub const SCAN_POINTS: usize = 20001;
/// Refinement ratio above which a diagnostic counts as diverging.
const DIVERGENCE_RATIO: f64 = 1.5;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone)]
pub enum SymbolKind {
    Constant(Complex64),
    /// `sum_k coeffs[k] (-2 i xi)^k`.
    Polynomial(Vec<Complex64>),
    /// `c0 - i c1 tanh(h xi) + c2 / cosh(h xi)`.
    TanhFamily {
        c0: Complex64,
        c1: Complex64,
        c2: Complex64,
        h: f64,
    },
    /// `c0 + 2 c1 xi coth(pi xi)`.
    XiCoth { c0: Complex64, c1: Complex64 },
    /// `scale * coth(h xi)`, with a pole at the origin.
    Coth { scale: Complex64, h: f64 },
    /// `(F_G K)(xi)` evaluated from kernel samples.
    Kernel(Arc<SampledFunction>),
    /// Linear interpolation of a spectrum, held constant beyond its range.
    Tabulated(Arc<Spectrum>),
    /// `<xi>^s`.
    Bessel(f64),
    Product(Vec<Symbol>),
    Sum(Vec<Symbol>),
    Inverse(Box<Symbol>),
}

/// A symbol with its growth class `<xi>^r`.
#[derive(Debug, Clone)]
pub struct Symbol {
    pub kind: SymbolKind,
    declared_order: Option<f64>,
}

impl From<SymbolKind> for Symbol {
    fn from(kind: SymbolKind) -> Self {
        Symbol {
            kind,
            declared_order: None,
        }
    }
}

impl Symbol {
    pub fn constant(c: Complex64) -> Self {
        SymbolKind::Constant(c).into()
    }

    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        SymbolKind::Polynomial(coeffs).into()
    }

    /// `(-2 i xi)^k`, the symbol of the k-th invariant derivative.
    pub fn derivative(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = ONE;
        Self::polynomial(coeffs)
    }

    pub fn tanh_family(c0: Complex64, c1: Complex64, c2: Complex64, h: f64) -> Self {
        SymbolKind::TanhFamily { c0, c1, c2, h }.into()
    }

    /// `c0 + 2 c1 xi coth(pi xi)`.
    pub fn prandtl(c0: Complex64, c1: Complex64) -> Self {
        SymbolKind::XiCoth { c0, c1 }.into()
    }

    /// `c0 - i c1 tanh(pi xi) + c2 / cosh(pi xi)`.
    pub fn tricomi(c0: Complex64, c1: Complex64, c2: Complex64) -> Self {
        Self::tanh_family(c0, c1, c2, PI)
    }

    /// `c0 - i c1 tanh(pi xi / 2)`.
    pub fn lavrentjev_bitsadze(c0: Complex64, c1: Complex64) -> Self {
        Self::tanh_family(c0, c1, ZERO, PI / 2.0)
    }

    pub fn coth(scale: Complex64, h: f64) -> Self {
        SymbolKind::Coth { scale, h }.into()
    }

    pub fn kernel(k: SampledFunction) -> Self {
        SymbolKind::Kernel(Arc::new(k)).into()
    }

    pub fn tabulated(s: Spectrum) -> Self {
        SymbolKind::Tabulated(Arc::new(s)).into()
    }

    pub fn bessel(s: f64) -> Self {
        SymbolKind::Bessel(s).into()
    }

    pub fn product(factors: Vec<Symbol>) -> Self {
        SymbolKind::Product(factors).into()
    }

    pub fn sum(terms: Vec<Symbol>) -> Self {
        SymbolKind::Sum(terms).into()
    }

    pub fn inverse(self) -> Self {
        SymbolKind::Inverse(Box::new(self)).into()
    }

    pub fn times(self, other: Symbol) -> Self {
        Self::product(vec![self, other])
    }

    pub fn scaled(self, c: Complex64) -> Self {
        Self::product(vec![Self::constant(c), self])
    }

    /// Declares a growth class different from the one derived from the form.
    pub fn with_weight_order(mut self, r: f64) -> Self {
        self.declared_order = Some(r);
        self
    }

    /// Declared growth class `r` of `a(xi) ~ <xi>^r`.
    pub fn weight_order(&self) -> f64 {
        self.declared_order.unwrap_or_else(|| self.natural_order())
    }

    fn natural_order(&self) -> f64 {
        match &self.kind {
            SymbolKind::Constant(_)
            | SymbolKind::TanhFamily { .. }
            | SymbolKind::Coth { .. }
            | SymbolKind::Kernel(_)
            | SymbolKind::Tabulated(_) => 0.0,
            SymbolKind::Polynomial(c) => c.iter().rposition(|v| *v != ZERO).unwrap_or(0) as f64,
            SymbolKind::XiCoth { c1, .. } => {
                if *c1 == ZERO {
                    0.0
                } else {
                    1.0
                }
            }
            SymbolKind::Bessel(s) => *s,
            SymbolKind::Product(f) => f.iter().map(Symbol::weight_order).sum(),
            SymbolKind::Sum(t) => t
                .iter()
                .map(Symbol::weight_order)
                .fold(0.0, f64::max),
            SymbolKind::Inverse(a) => -a.weight_order(),
        }
    }

    pub fn eval(&self, xi: f64) -> Result<Complex64> {
        if !xi.is_finite() {
            return Err(Error::NonFinite(xi));
        }
        Ok(match &self.kind {
            SymbolKind::Constant(c) => *c,
            SymbolKind::Polynomial(coeffs) => {
                let z = Complex64::new(0.0, -2.0 * xi);
                coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
            }
            SymbolKind::TanhFamily { c0, c1, c2, h } => {
                c0 - Complex64::i() * c1 * (h * xi).tanh() + c2 * sech(h * xi)
            }
            SymbolKind::XiCoth { c0, c1 } => c0 + 2.0 * c1 * xi_coth_pi(xi),
            SymbolKind::Coth { scale, h } => {
                if xi == 0.0 || *h == 0.0 {
                    return Err(Error::Pole(xi));
                }
                scale / (h * xi).tanh()
            }
            SymbolKind::Kernel(k) => transform_at(k, xi),
            SymbolKind::Tabulated(s) => interpolate(s, xi),
            SymbolKind::Bessel(s) => Complex64::new(bracket(xi).powf(*s), 0.0),
            SymbolKind::Product(f) => {
                let mut acc = ONE;
                for a in f {
                    acc *= a.eval(xi)?;
                }
                acc
            }
            SymbolKind::Sum(t) => {
                let mut acc = ZERO;
                for a in t {
                    acc += a.eval(xi)?;
                }
                acc
            }
            SymbolKind::Inverse(a) => {
                let v = a.eval(xi)?;
                if v == ZERO {
                    return Err(Error::Pole(xi));
                }
                ONE / v
            }
        })
    }

    /// `<xi>^{-r} a(xi)`.
    pub fn eval_weighted(&self, xi: f64, r: f64) -> Result<Complex64> {
        Ok(self.eval(xi)? * bracket(xi).powf(-r))
    }

    /// `lim <xi>^{-r} a(xi)` as `xi -> sign * inf`; infinite components
    /// mark an unbounded limit.
    pub fn limit_weighted(&self, sign: f64, r: f64) -> Complex64 {
        let own = self.natural_order();
        if own < r - 1e-12 {
            ZERO
        } else if own > r + 1e-12 {
            Complex64::new(f64::INFINITY, 0.0)
        } else {
            self.leading(sign)
        }
    }

    /// `lim <xi>^{-n} a(xi)` with `n` the natural order.
    fn leading(&self, sign: f64) -> Complex64 {
        let s = sign.signum();
        match &self.kind {
            SymbolKind::Constant(c) => *c,
            SymbolKind::Polynomial(coeffs) => match coeffs.iter().rposition(|v| *v != ZERO) {
                None => ZERO,
                Some(n) => coeffs[n] * Complex64::new(0.0, -2.0 * s).powi(n as i32),
            },
            SymbolKind::TanhFamily { c0, c1, c2, h } => {
                if *h == 0.0 {
                    c0 + c2
                } else {
                    c0 - Complex64::i() * c1 * (s * h.signum())
                }
            }
            SymbolKind::XiCoth { c0, c1 } => {
                if *c1 == ZERO {
                    *c0
                } else {
                    2.0 * c1
                }
            }
            SymbolKind::Coth { scale, h } => scale * (s * h.signum()),
            SymbolKind::Kernel(_) => ZERO,
            SymbolKind::Tabulated(t) => {
                if s > 0.0 {
                    t.values[t.values.len() - 1]
                } else {
                    t.values[0]
                }
            }
            SymbolKind::Bessel(_) => ONE,
            SymbolKind::Product(f) => f
                .iter()
                .map(|a| a.limit_weighted(s, a.weight_order()))
                .product(),
            SymbolKind::Sum(t) => {
                let r = self.natural_order();
                t.iter().map(|a| a.limit_weighted(s, r)).sum()
            }
            SymbolKind::Inverse(a) => {
                let v = a.limit_weighted(s, a.weight_order());
                if v == ZERO {
                    Complex64::new(f64::INFINITY, 0.0)
                } else {
                    ONE / v
                }
            }
        }
    }

    /// Values on a frequency grid; poles yield an error.
    pub fn sample(&self, freqs: &FreqGrid) -> Result<Vec<Complex64>> {
        (0..freqs.count)
            .into_par_iter()
            .map(|k| self.eval(freqs.node(k)))
            .collect()
    }
}

fn interpolate(s: &Spectrum, xi: f64) -> Complex64 {
    let f = &s.freqs;
    let pos = (xi - f.first()) / f.spacing();
    if pos <= 0.0 {
        return s.values[0];
    }
    let last = s.values.len() - 1;
    if pos >= last as f64 {
        return s.values[last];
    }
    let k = pos.floor() as usize;
    let w = pos - k as f64;
    if w == 0.0 {
        s.values[k]
    } else {
        s.values[k] * (1.0 - w) + s.values[k + 1] * w
    }
}

/// Result of scanning `|<xi>^{-r} a(xi)|` for its infimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticityScan {
    pub margin: f64,
    /// Location of the minimum; `+-inf` when attained in a limit.
    pub xi: f64,
}

impl EllipticityScan {
    pub fn is_elliptic(&self) -> bool {
        self.margin > EPS_ELLIPTIC
    }

    pub fn require(self) -> Result<Self> {
        if self.is_elliptic() {
            Ok(self)
        } else {
            Err(Error::NotElliptic {
                margin: self.margin,
                xi: self.xi,
            })
        }
    }
}

/// Infimum of `|<xi>^{-r} a(xi)|` over a dense scan of `[-8, 8]` together
/// with the limits at `+-inf`. Poles count as large values.
pub fn ellipticity_scan(a: &Symbol, r: f64) -> EllipticityScan {
    let step = 2.0 * SCAN_RANGE / (SCAN_POINTS - 1) as f64;
    let (margin, xi) = (0..SCAN_POINTS)
        .into_par_iter()
        .map(|k| {
            // exact zero at the centre index
            let xi = if k == SCAN_POINTS / 2 {
                0.0
            } else {
                -SCAN_RANGE + k as f64 * step
            };
            let m = a.eval_weighted(xi, r).map_or(f64::INFINITY, |v| v.norm());
            (m, xi)
        })
        .reduce(
            || (f64::INFINITY, 0.0),
            |p, q| if q.0 < p.0 || (q.0 == p.0 && q.1 < p.1) { q } else { p },
        );
    let mut best = EllipticityScan { margin, xi };
    for sign in [-1.0, 1.0] {
        let m = a.limit_weighted(sign, r).norm();
        if m < best.margin {
            best = EllipticityScan {
                margin: m,
                xi: sign * f64::INFINITY,
            };
        }
    }
    best
}

pub fn ellipticity_margin(a: &Symbol, r: f64) -> f64 {
    ellipticity_scan(a, r).margin
}

/// Constructive inverse of a tanh-family symbol,
/// `a^{-1}(xi) = d0 - d1 tanh(h xi) + a_{-1}(xi)` with an exponentially
/// decaying tail `a_{-1}`.
#[derive(Debug, Clone)]
pub struct InverseDecomposition {
    pub c0: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub d0: Complex64,
    pub d1: Complex64,
    pub h: f64,
    pub freqs: FreqGrid,
    /// `a_{-1}` on `freqs`.
    pub tail: Vec<Complex64>,
}

pub fn invert_tanh_family(
    c0: Complex64,
    c1: Complex64,
    c2: Complex64,
    h: f64,
    freqs: FreqGrid,
) -> Result<InverseDecomposition> {
    ellipticity_scan(&Symbol::tanh_family(c0, c1, c2, h), 0.0).require()?;
    let plus = ONE / (c0 + Complex64::i() * c1);
    let minus = ONE / (c0 - Complex64::i() * c1);
    let mut dec = InverseDecomposition {
        c0,
        c1,
        c2,
        d0: 0.5 * (plus + minus),
        d1: 0.5 * (plus - minus),
        h,
        freqs,
        tail: Vec::new(),
    };
    dec.tail = (0..freqs.count).map(|k| dec.tail_at(freqs.node(k))).collect();
    Ok(dec)
}

impl InverseDecomposition {
    /// `a_{-1}(xi)`.
    ///
    /// With `b = c0 - i c1 tanh(h xi)` the tail equals
    /// `[c1^2 sech^2 / (c0^2 + c1^2) - c2 sech / a] / b`, which avoids the
    /// cancellation in `a^{-1} - d0 + d1 tanh`. Near zeros of `b` the direct
    /// difference is used instead.
    pub fn tail_at(&self, xi: f64) -> Complex64 {
        let (c0, c1, c2) = (self.c0, self.c1, self.c2);
        let th = (self.h * xi).tanh();
        let se = sech(self.h * xi);
        let a = c0 - Complex64::i() * c1 * th + c2 * se;
        let b = c0 - Complex64::i() * c1 * th;
        if b.norm() < 1e-2 * c0.norm().max(c1.norm()) {
            return ONE / a - self.d0 + self.d1 * th;
        }
        (c1 * c1 * se * se / (c0 * c0 + c1 * c1) - c2 * se / a) / b
    }

    /// `d0 - d1 tanh(h xi) + a_{-1}(xi)` at grid node `k`.
    pub fn reassemble(&self, k: usize) -> Complex64 {
        let xi = self.freqs.node(k);
        self.d0 - self.d1 * (self.h * xi).tanh() + self.tail[k]
    }

    pub fn symbol(&self) -> Symbol {
        Symbol::tanh_family(self.c0, self.c1, self.c2, self.h)
    }

    pub fn tail_spectrum(&self) -> Spectrum {
        Spectrum {
            freqs: self.freqs,
            values: self.tail.clone(),
        }
    }

    /// `max_k |a(xi_k) a^{-1}(xi_k) - 1|` with `a^{-1}` reassembled.
    pub fn reassembly_error(&self) -> f64 {
        let a = self.symbol();
        (0..self.freqs.count)
            .map(|k| {
                let v = a.eval(self.freqs.node(k)).unwrap_or(ZERO);
                (v * self.reassemble(k) - ONE).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Least-squares slope of `log|a_{-1}|` against `|xi|` over
    /// `lo <= |xi| <= hi`. `None` when the tail vanishes there.
    pub fn tail_decay_slope(&self, lo: f64, hi: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = (0..self.freqs.count)
            .filter_map(|k| {
                let x = self.freqs.node(k).abs();
                let v = self.tail[k].norm();
                (x >= lo && x <= hi && v > 0.0).then(|| (x, v.ln()))
            })
            .collect();
        least_squares_slope(&pts)
    }
}

pub(crate) fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Numerical multiplier certificate for a symbol.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplierReport {
    pub margin: f64,
    pub tv: f64,
    #[serde(rename = "M0")]
    pub m0: f64,
    #[serde(rename = "M1")]
    pub m1: f64,
    pub verdict: String,
    pub weight_order: f64,
    /// `[tv, M0, M1]` on the refined scan.
    pub refined: [f64; 3],
}

impl MultiplierReport {
    pub fn is_multiplier(&self) -> bool {
        self.verdict == "multiplier"
    }
}

/// Total variation and Mikhlin-type constants of `<xi>^{-r} a` on two
/// nested midpoint scans of `[-8, 8]`; a quantity that grows by more than
/// half under refinement, or is not finite, is reported as diverging.
pub fn multiplier_diagnostics(a: &Symbol, points: usize) -> MultiplierReport {
    let r = a.weight_order();
    let coarse = scan_constants(a, r, points);
    let fine = scan_constants(a, r, 2 * points);
    let diverges = coarse.iter().zip(&fine).any(|(c, f)| {
        !f.is_finite() || (*f > 1e-300 && *f > DIVERGENCE_RATIO * c.max(1e-300))
    });
    MultiplierReport {
        margin: ellipticity_margin(a, r),
        tv: coarse[0],
        m0: coarse[1],
        m1: coarse[2],
        verdict: if diverges {
            "not a multiplier".into()
        } else {
            "multiplier".into()
        },
        weight_order: r,
        refined: fine,
    }
}

pub const DIAGNOSTIC_POINTS: usize = 20000;

fn scan_constants(a: &Symbol, r: f64, points: usize) -> [f64; 3] {
    let step = 2.0 * SCAN_RANGE / points as f64;
    let w = |xi: f64| a.eval_weighted(xi, r).unwrap_or(Complex64::new(f64::INFINITY, 0.0));
    let rows: Vec<(Complex64, f64)> = (0..points)
        .into_par_iter()
        .map(|k| {
            let xi = -SCAN_RANGE + (k as f64 + 0.5) * step;
            let d = 0.25 * step;
            let m1 = match (a.eval(xi + d), a.eval(xi - d)) {
                (Ok(p), Ok(q)) => (xi * (p - q) / (2.0 * d)).norm() * bracket(xi).powf(-r),
                _ => f64::INFINITY,
            };
            (w(xi), m1)
        })
        .collect();
    let tv = rows.windows(2).map(|p| (p[1].0 - p[0].0).norm()).sum();
    let m0 = rows.iter().map(|p| p.0.norm()).fold(0.0, f64::max);
    let m1 = rows.iter().map(|p| p.1).fold(0.0, f64::max);
    [tv, m0, m1]
}

/// One kernel term `d (-2 i xi)^{m + n} (F_G K)(xi)` of a convolution
/// integro-differential operator.
#[derive(Debug, Clone)]
pub struct KernelTerm {
    pub d: Complex64,
    pub m: u32,
    pub n: u32,
    pub kernel: SampledFunction,
}

/// Symbol `sum_k c_k (-2 i xi)^k + sum_k d_k (-2 i xi)^{m_k + n_k} (F_G K_k)(xi)`
/// of weight order `order`.
pub fn ide_symbol(order: u32, c: &[Complex64], terms: &[KernelTerm]) -> Result<Outcome<Symbol>> {
    if let Some(top) = c.iter().rposition(|v| *v != ZERO) {
        if top > order as usize {
            return Err(Error::OrderHypothesis {
                term: top,
                total: top as u32,
                order,
            });
        }
    }
    let mut warnings = Vec::new();
    let mut parts = vec![Symbol::polynomial(c.to_vec())];
    for (k, t) in terms.iter().enumerate() {
        let total = t.m + t.n;
        if total > order {
            return Err(Error::OrderHypothesis {
                term: k,
                total,
                order,
            });
        }
        let end = t.kernel.end_magnitude();
        if end > DEFAULT_TOLERANCE {
            warnings.push(Warning::Truncation {
                stage: format!("kernel {k}"),
                magnitude: end,
                tolerance: DEFAULT_TOLERANCE,
            });
        }
        let mut mono = vec![ZERO; total as usize + 1];
        mono[total as usize] = t.d;
        parts.push(Symbol::product(vec![
            Symbol::polynomial(mono),
            Symbol::kernel(t.kernel.clone()),
        ]));
    }
    let sym = Symbol::sum(parts).with_weight_order(order as f64);
    Ok(Outcome::with_warnings(sym, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfourier::{Builtin, LineGrid};
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn eval_examples() {
        let p = Symbol::prandtl(c(1.0), c(1.0));
        assert!((p.eval(0.0).unwrap() - c(1.0 + 2.0 / PI)).norm() < 1e-15);
        assert!((p.eval(1e-6).unwrap() - c(1.0 + 2.0 / PI)).norm() < 1e-11);
        let t = Symbol::tricomi(c(1.5), c(0.3), Complex64::new(0.2, 0.7));
        assert_eq!(t.eval(0.0).unwrap(), Complex64::new(1.7, 0.7));
        let lb = Symbol::lavrentjev_bitsadze(c(1.0), c(1.0));
        assert_eq!(lb.limit_weighted(1.0, 0.0), Complex64::new(1.0, -1.0));
        assert!((lb.eval(30.0).unwrap() - Complex64::new(1.0, -1.0)).norm() < 1e-15);
        assert_eq!(Symbol::coth(c(1.0), PI).eval(0.0), Err(Error::Pole(0.0)));
        assert!(Symbol::coth(c(1.0), PI).eval(1.0).is_ok());
    }

    #[test]
    fn weight_orders() {
        let d = Symbol::derivative(2);
        assert_eq!(d.weight_order(), 2.0);
        let p = Symbol::prandtl(c(1.0), c(1.0));
        assert_eq!(p.clone().times(d.clone()).weight_order(), 3.0);
        assert_eq!(p.inverse().weight_order(), -1.0);
        assert_eq!(Symbol::bessel(-1.5).weight_order(), -1.5);
        assert_eq!(d.with_weight_order(4.0).weight_order(), 4.0);
    }

    #[test]
    fn margin_examples() {
        assert_eq!(ellipticity_margin(&Symbol::constant(c(1.0)), 0.0), 1.0);
        let a = Symbol::tanh_family(c(2.0), c(1.0), c(0.0), PI);
        let s = ellipticity_scan(&a, 0.0);
        assert_eq!(s.margin, 2.0);
        assert_eq!(s.xi, 0.0);
        let a = Symbol::tanh_family(c(0.0), c(1.0), c(0.0), PI);
        assert_eq!(ellipticity_margin(&a, 0.0), 0.0);
        let p = Symbol::prandtl(c(-1.0), c(PI / 2.0));
        let s = ellipticity_scan(&p, 1.0);
        assert!(!s.is_elliptic());
        assert!(s.xi.abs() <= 0.01);
        // limit at infinity: 2 - i tanh -> 2 - i, margin sqrt(5) never below 2
        let a = Symbol::tanh_family(c(1.0), c(1.0), c(0.0), PI).inverse();
        let lim = a.limit_weighted(1.0, 0.0);
        assert!((lim - Complex64::new(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn limits_follow_orders() {
        let d = Symbol::derivative(1);
        assert_eq!(d.limit_weighted(1.0, 1.0), Complex64::new(0.0, -2.0));
        assert_eq!(d.limit_weighted(-1.0, 1.0), Complex64::new(0.0, 2.0));
        assert_eq!(d.limit_weighted(1.0, 2.0), ZERO);
        assert!(d.limit_weighted(1.0, 0.0).re.is_infinite());
        let p = Symbol::prandtl(c(3.0), c(2.0));
        assert_eq!(p.limit_weighted(-1.0, 1.0), c(4.0));
        let s = Symbol::sum(vec![Symbol::constant(c(5.0)), Symbol::derivative(1)]);
        assert_eq!(s.limit_weighted(1.0, 1.0), Complex64::new(0.0, -2.0));
    }

    #[test]
    fn inversion_examples() {
        let f = FreqGrid::default();
        let dec = invert_tanh_family(c(2.0), c(0.0), c(0.0), PI, f).unwrap();
        assert_eq!(dec.d0, c(0.5));
        assert_eq!(dec.d1, ZERO);
        assert!(dec.tail.iter().all(|v| v.norm() == 0.0));

        let dec = invert_tanh_family(c(1.0), c(1.0), c(0.0), PI, f).unwrap();
        assert!((dec.d0 - c(0.5)).norm() < 1e-15);
        assert!((dec.d1 - Complex64::new(0.0, -0.5)).norm() < 1e-15);

        let err = invert_tanh_family(c(0.0), c(1.0), c(0.0), PI, f).unwrap_err();
        assert!(matches!(err, Error::NotElliptic { .. }));
    }

    #[test]
    fn inversion_reassembles_and_decays() {
        let f = FreqGrid::default();
        for (c0, c1, c2, h) in [
            (c(2.0), c(1.0), c(1.0), PI),
            (c(1.0), c(0.5), c(0.0), PI / 2.0),
            (Complex64::new(1.0, 0.5), c(0.7), c(-0.4), PI),
            (c(1.0), c(-0.5), c(0.8), 1.0),
        ] {
            let dec = invert_tanh_family(c0, c1, c2, h, f).unwrap();
            assert!(dec.reassembly_error() <= 1e-12);
            let slope = dec.tail_decay_slope(2.0, 6.0).unwrap();
            assert!(slope <= -0.9 * h, "slope {slope} h {h}");
        }
    }

    #[test]
    fn tail_fallback_near_zero_of_b() {
        // b = 1 - i (-i 2) tanh = 1 - 2 tanh vanishes at tanh = 1/2, a does not
        let f = FreqGrid::default();
        let dec = invert_tanh_family(c(1.0), Complex64::new(0.0, -2.0), Complex64::new(0.0, 3.0), 1.0, f).unwrap();
        assert!(dec.reassembly_error() <= 1e-12);
    }

    #[test]
    fn diagnostics_examples() {
        let r = multiplier_diagnostics(&Symbol::tanh_family(c(0.0), Complex64::new(0.0, 1.0), c(0.0), PI), 4000);
        assert!(r.m0 <= 1.0);
        assert!((r.tv - 2.0).abs() < 1e-6);
        assert!(r.is_multiplier());
        let r = multiplier_diagnostics(&Symbol::coth(c(1.0), PI), 4000);
        assert_eq!(r.verdict, "not a multiplier");
        let r = multiplier_diagnostics(&Symbol::constant(Complex64::new(0.6, 0.8)), 4000);
        assert_eq!((r.tv, r.m1), (0.0, 0.0));
        assert!((r.m0 - 1.0).abs() < 1e-15);
        let json = serde_json::to_value(&r).unwrap();
        for key in ["margin", "tv", "M0", "M1", "verdict"] {
            assert!(json.get(key).is_some());
        }
    }

    #[test]
    fn ide_examples() {
        let (c0, c1) = (Complex64::new(0.5, 1.0), c(-2.0));
        let a = ide_symbol(1, &[c0, c1], &[]).unwrap().into_value();
        for xi in [-3.0, 0.0, 1.25] {
            let expect = c0 - Complex64::new(0.0, 2.0) * c1 * xi;
            assert!((a.eval(xi).unwrap() - expect).norm() < 1e-15);
        }
        assert_eq!(a.weight_order(), 1.0);

        let grid = LineGrid::default();
        let k = SampledFunction::builtin(grid, Builtin::Sech);
        let term = KernelTerm {
            d: c(1.0),
            m: 0,
            n: 0,
            kernel: k,
        };
        let a = ide_symbol(0, &[c(0.0)], std::slice::from_ref(&term)).unwrap();
        assert!(a.warnings.is_empty());
        for xi in [-2.0, 0.0, 0.5] {
            let expect = PI / (PI * xi).cosh();
            assert!((a.value.eval(xi).unwrap() - c(expect)).norm() < 1e-8);
        }

        let zero = ide_symbol(2, &[ZERO; 3], &[]).unwrap().into_value();
        assert_eq!(ellipticity_margin(&zero, 2.0), 0.0);

        let bad = KernelTerm { m: 1, n: 1, ..term };
        let err = ide_symbol(1, &[c(1.0)], &[bad]).unwrap_err();
        assert!(err.to_string().contains("order hypothesis violated"));
    }

    #[test]
    fn tabulated_interpolates() {
        let f = FreqGrid::new(2.0, 17).unwrap();
        let s = Spectrum::from_fn(f, |xi| c(xi * xi));
        let a = Symbol::tabulated(s);
        assert_eq!(a.eval(1.0).unwrap(), c(1.0));
        assert!((a.eval(1.125).unwrap() - c(1.28125)).norm() < 1e-15);
        assert_eq!(a.eval(5.0).unwrap(), c(4.0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn margin_invariant_under_unimodular_factor(
            phase in 0.0f64..(2.0 * PI), c0 in 0.5f64..3.0, c1 in -2.0f64..2.0,
        ) {
            let a = Symbol::tanh_family(c(c0), c(c1), c(0.3), PI);
            let lam = Complex64::from_polar(1.0, phase);
            let m = ellipticity_margin(&a, 0.0);
            let ml = ellipticity_margin(&a.clone().scaled(lam), 0.0);
            prop_assert!((m - ml).abs() <= 1e-14 * m);
            for lam in [c(-1.0), Complex64::i(), -Complex64::i()] {
                prop_assert_eq!(ellipticity_margin(&a.clone().scaled(lam), 0.0), m);
            }
        }

        #[test]
        fn polynomial_matches_direct_evaluation(
            coeffs in proptest::collection::vec(-2.0f64..2.0, 1..5),
            xis in proptest::collection::vec(-5.0f64..5.0, 20),
        ) {
            let cs: Vec<Complex64> = coeffs.iter().map(|v| c(*v)).collect();
            let order = cs.len() as u32 - 1;
            let a = ide_symbol(order, &cs, &[]).unwrap().into_value();
            for xi in xis {
                let z = Complex64::new(0.0, -2.0 * xi);
                let direct: Complex64 = cs.iter().enumerate().map(|(k, ck)| ck * z.powi(k as i32)).sum();
                prop_assert!((a.eval(xi).unwrap() - direct).norm() <= 1e-13 * direct.norm().max(1.0));
            }
        }
    }
}
