//! Spectral solvers for convolution equations on G.
//!
//! Every family is reduced to `W_A u = rhs0` for a symbol `A` and a
//! weighted right-hand side, then solved as `u = F_G^{-1}[F_G rhs0 / A]`
//! once the weighted ellipticity of `A` has been checked.
//!
//! * Prandtl: `c0 u/(1 - x^2) + (c1/pi) PV int u'(y)/(x - y) dy = f`,
//!   multiplied by `1 - x^2`, symbol `c0 + 2 c1 xi coth(pi xi)`.
//! * Tricomi: `c0 v + (c1/pi) PV int v(y)/(y - x) dy + (c2/pi) int v(y)/(1 - xy) dy = g`
//!   for `v0 = sqrt(1 - x^2) v`, symbol `c0 - i c1 tanh(pi xi) + c2 / cosh(pi xi)`.
//! * Lavrentjev-Bitsadze on `(0, 1)`: after `w = V phi`,
//!   `V phi(x) = (1 - x^2) phi((1 + x)/2)`, symbol `c0 - i c1 tanh(pi xi / 2)`.
//! * General integro-differential equations of order `m` with symbol
//!   built by [`ide_symbol`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Outcome, Result, Warning};
use crate::gfourier::{Chart, SampledFunction, Spectrum, Transform};
use crate::operators::{check_decay, d_g, integrate_at_node, pv_cauchy_at_node};
use crate::spaces::{lp_norm, zygmund_seminorm};
use crate::special::sech;
use crate::symbols::{
    ellipticity_scan, ide_symbol, invert_tanh_family, EllipticityScan, InverseDecomposition,
    KernelTerm, Symbol,
};

/// Margins below this value produce a weak-ellipticity warning.
pub const WEAK_MARGIN: f64 = 1e-3;
/// Interior collocation points of the physical-space residual.
pub const SPACE_POINTS: usize = 33;
/// The physical-space residual is evaluated for `|t| <= SPACE_RANGE`.
pub const SPACE_RANGE: f64 = 3.0;

/// Prandtl equation with right-hand side `f` in the group chart.
#[derive(Debug, Clone)]
pub struct PrandtlSpec {
    pub c0: Complex64,
    pub c1: Complex64,
    pub f: SampledFunction,
}

/// Tricomi equation with right-hand side `g`.
#[derive(Debug, Clone)]
pub struct TricomiSpec {
    pub c0: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub g: SampledFunction,
}

/// Lavrentjev-Bitsadze equation with right-hand side `h` on `(0, 1)`,
/// sampled at `(1 + tanh t_j) / 2`.
#[derive(Debug, Clone)]
pub struct LBSpec {
    pub c0: Complex64,
    pub c1: Complex64,
    pub h: SampledFunction,
}

/// `sum_k c_k D_G^k u + sum_k d_k D_G^{m_k} (K_k *_G D_G^{n_k} u) = w`.
#[derive(Debug, Clone)]
pub struct IDESpec {
    pub order: u32,
    pub c: Vec<Complex64>,
    pub terms: Vec<KernelTerm>,
    pub w: SampledFunction,
}

#[derive(Debug, Clone)]
pub enum Equation {
    Prandtl(PrandtlSpec),
    Tricomi(TricomiSpec),
    LB(LBSpec),
    Ide(IDESpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Prandtl,
    Tricomi,
    Lb,
    Ide,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Prandtl => "prandtl",
            Family::Tricomi => "tricomi",
            Family::Lb => "lb",
            Family::Ide => "ide",
        }
    }
}

/// `a^{-1} = d0 - d1 tanh(h xi) + a_{-1}` and the kernel `F_G^{-1} a_{-1}`.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionSummary {
    pub d0: Complex64,
    pub d1: Complex64,
    pub h: f64,
    #[serde(skip)]
    pub kernel: SampledFunction,
    #[serde(skip)]
    pub inverse: InverseDecomposition,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Diagnostics {
    pub solution_l2: Option<f64>,
    pub zygmund_alpha: Option<f64>,
    pub zygmund_seminorm: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub family: Family,
    /// Solution of the equation as stated: `u`, `v`, `phi` or `u`.
    #[serde(skip)]
    pub solution: SampledFunction,
    /// Solution of the convolution form: `u`, `v0`, `w` or `u`.
    #[serde(skip)]
    pub weighted: SampledFunction,
    /// Right-hand side of the convolution form.
    #[serde(skip)]
    pub rhs0: SampledFunction,
    #[serde(skip)]
    pub symbol: Symbol,
    pub weight_order: f64,
    pub symbol_margin: f64,
    pub margin_xi: f64,
    pub freq_residual: f64,
    pub space_residual: Option<f64>,
    pub warnings: Vec<Warning>,
    pub diagnostics: Diagnostics,
    pub decomposition: Option<DecompositionSummary>,
}

impl SolveReport {
    /// Fills the smoothness diagnostics for the convolution-form solution.
    pub fn with_smoothness(mut self, tr: &Transform, alpha: f64) -> Result<Self> {
        self.diagnostics.solution_l2 = lp_norm(&self.weighted, 2.0).ok();
        self.diagnostics.zygmund_alpha = Some(alpha);
        self.diagnostics.zygmund_seminorm = Some(zygmund_seminorm(tr, &self.weighted, alpha)?);
        Ok(self)
    }
}

impl Equation {
    pub fn family(&self) -> Family {
        match self {
            Equation::Prandtl(_) => Family::Prandtl,
            Equation::Tricomi(_) => Family::Tricomi,
            Equation::LB(_) => Family::Lb,
            Equation::Ide(_) => Family::Ide,
        }
    }

    /// Symbol of the convolution form and the weight of its ellipticity test.
    pub fn symbol(&self) -> Result<Outcome<(Symbol, f64)>> {
        Ok(match self {
            Equation::Prandtl(s) => {
                let a = Symbol::prandtl(s.c0, s.c1);
                let r = a.weight_order();
                Outcome::new((a, r))
            }
            Equation::Tricomi(s) => Outcome::new((Symbol::tricomi(s.c0, s.c1, s.c2), 0.0)),
            Equation::LB(s) => Outcome::new((Symbol::lavrentjev_bitsadze(s.c0, s.c1), 0.0)),
            Equation::Ide(s) => {
                ide_symbol(s.order, &s.c, &s.terms)?.map(|a| (a, s.order as f64))
            }
        })
    }

    /// Right-hand side of the convolution form: `(1 - x^2) f`,
    /// `sqrt(1 - x^2) g`, `V h` or `w`.
    pub fn weighted_rhs(&self) -> SampledFunction {
        match self {
            Equation::Prandtl(s) => s.f.map(|t, v| v * sech(t).powi(2)),
            Equation::Tricomi(s) => s.g.map(|t, v| v * sech(t)),
            Equation::LB(s) => s.h.map(|t, v| v * sech(t).powi(2)).with_chart(Chart::Group),
            Equation::Ide(s) => s.w.clone(),
        }
    }

    /// Maps the convolution-form solution back to the unknown of the
    /// equation as stated.
    pub fn unweight(&self, weighted: &SampledFunction) -> SampledFunction {
        match self {
            Equation::Prandtl(_) | Equation::Ide(_) => weighted.clone(),
            Equation::Tricomi(_) => weighted.map(|t, v| v * t.cosh()).with_chart(Chart::Group),
            Equation::LB(_) => weighted
                .map(|t, v| v * t.cosh().powi(2))
                .with_chart(Chart::HalfInterval),
        }
    }

    fn tanh_family(&self) -> Option<(Complex64, Complex64, Complex64, f64)> {
        match self {
            Equation::Tricomi(s) => Some((s.c0, s.c1, s.c2, PI)),
            Equation::LB(s) => Some((s.c0, s.c1, Complex64::new(0.0, 0.0), PI / 2.0)),
            _ => None,
        }
    }

    pub fn solve(&self, tr: &Transform) -> Result<SolveReport> {
        let mut warnings = Vec::new();
        let (symbol, r) = self.symbol()?.collect_into(&mut warnings);
        let scan = ellipticity_scan(&symbol, r).require()?;
        if scan.margin < WEAK_MARGIN {
            warnings.push(Warning::WeakEllipticity {
                margin: scan.margin,
                xi: scan.xi,
            });
        }
        let rhs0 = self.weighted_rhs();
        warnings.extend(check_decay("weighted right-hand side", &rhs0, tr.tolerance)?);

        let spec = tr.forward(&rhs0).collect_into(&mut warnings);
        let a = symbol.sample(&spec.freqs)?;
        let solved = Spectrum {
            freqs: spec.freqs,
            values: spec.values.iter().zip(&a).map(|(f, a)| f / a).collect(),
        };
        let weighted = tr
            .inverse(&solved, rhs0.grid)
            .collect_into(&mut warnings)
            .with_chart(rhs0.chart);

        let decomposition = match self.tanh_family() {
            Some((c0, c1, c2, h)) => {
                let inverse = invert_tanh_family(c0, c1, c2, h, tr.freqs)?;
                let kernel = tr.inverse(&inverse.tail_spectrum(), rhs0.grid).value;
                Some(DecompositionSummary {
                    d0: inverse.d0,
                    d1: inverse.d1,
                    h,
                    kernel,
                    inverse,
                })
            }
            None => None,
        };

        let mut report = SolveReport {
            family: self.family(),
            solution: self.unweight(&weighted),
            weighted,
            rhs0,
            symbol,
            weight_order: r,
            symbol_margin: scan.margin,
            margin_xi: scan.xi,
            freq_residual: 0.0,
            space_residual: None,
            warnings,
            diagnostics: Diagnostics::default(),
            decomposition,
        };
        let (freq, space) = residual(tr, self, &report)?;
        report.freq_residual = freq;
        report.space_residual = space;
        Ok(report)
    }

    /// Applies the operator of the equation to a convolution-form solution,
    /// returning the weighted right-hand side it produces.
    pub fn forward(&self, tr: &Transform, weighted: &SampledFunction) -> Result<SampledFunction> {
        let (symbol, _) = self.symbol()?.into_value();
        Ok(crate::operators::apply_symbol(tr, &symbol, weighted)?.value)
    }
}

pub fn solve_prandtl(tr: &Transform, spec: PrandtlSpec) -> Result<SolveReport> {
    Equation::Prandtl(spec).solve(tr)
}

pub fn solve_tricomi(tr: &Transform, spec: TricomiSpec) -> Result<SolveReport> {
    Equation::Tricomi(spec).solve(tr)
}

pub fn solve_lb(tr: &Transform, spec: LBSpec) -> Result<SolveReport> {
    Equation::LB(spec).solve(tr)
}

pub fn solve_ide(tr: &Transform, spec: IDESpec) -> Result<SolveReport> {
    Equation::Ide(spec).solve(tr)
}

/// Frequency residual `max |A F_G u - F_G rhs0| / max |F_G rhs0|` and, for
/// the Prandtl and Tricomi families, the relative error of the equation in
/// its physical form at interior collocation points.
pub fn residual(tr: &Transform, eq: &Equation, report: &SolveReport) -> Result<(f64, Option<f64>)> {
    let fu = tr.forward(&report.weighted).value;
    let fr = tr.forward(&report.rhs0).value;
    let a = report.symbol.sample(&fu.freqs)?;
    let scale = fr.max_abs();
    let diff = fu
        .values
        .iter()
        .zip(&a)
        .zip(&fr.values)
        .map(|((u, a), f)| (a * u - f).norm())
        .fold(0.0, f64::max);
    let freq = if scale > 0.0 { diff / scale } else { diff };
    let space = match eq {
        Equation::Prandtl(s) => Some(prandtl_space_residual(tr, s, &report.weighted)?),
        Equation::Tricomi(s) => Some(tricomi_space_residual(s, &report.weighted)),
        _ => None,
    };
    Ok((freq, space))
}

fn collocation_nodes(grid: &crate::gfourier::LineGrid) -> Vec<usize> {
    let h = grid.spacing();
    (0..SPACE_POINTS)
        .map(|k| {
            let t = -SPACE_RANGE + 2.0 * SPACE_RANGE * k as f64 / (SPACE_POINTS - 1) as f64;
            ((t - grid.first()) / h).round() as usize
        })
        .collect()
}

fn relative_error(lhs: &[Complex64], rhs: &[Complex64]) -> f64 {
    let num: f64 = lhs.iter().zip(rhs).map(|(a, b)| (a - b).norm_sqr()).sum();
    let den: f64 = rhs.iter().map(|b| b.norm_sqr()).sum();
    if den > 0.0 {
        (num / den).sqrt()
    } else {
        num.sqrt()
    }
}

/// `c0 u + (1 - x^2)(c1/pi) PV int u'(y)/(x - y) dy` against `(1 - x^2) f`.
fn prandtl_space_residual(tr: &Transform, s: &PrandtlSpec, u: &SampledFunction) -> Result<f64> {
    let grid = u.grid;
    // u'(y) dy = D_G u dt
    let density = d_g(tr, u, 1)?.value.values;
    let nodes = collocation_nodes(&grid);
    let mut lhs = Vec::with_capacity(nodes.len());
    let mut rhs = Vec::with_capacity(nodes.len());
    for &i in &nodes {
        let t = grid.node(i);
        let pv = -pv_cauchy_at_node(&grid, &density, i);
        lhs.push(s.c0 * u.values[i] + sech(t).powi(2) * s.c1 / PI * pv);
        rhs.push(s.f.values[i] * sech(t).powi(2));
    }
    Ok(relative_error(&lhs, &rhs))
}

/// `c0 v + (c1/pi) PV int v/(y - x) dy + (c2/pi) int v/(1 - xy) dy` against `g`.
fn tricomi_space_residual(s: &TricomiSpec, v0: &SampledFunction) -> f64 {
    let grid = v0.grid;
    // v(y) dy = v0 sech t dt
    let density: Vec<Complex64> = v0
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| v * sech(grid.node(j)))
        .collect();
    let nodes = collocation_nodes(&grid);
    let mut lhs = Vec::with_capacity(nodes.len());
    let mut rhs = Vec::with_capacity(nodes.len());
    for &i in &nodes {
        let t = grid.node(i);
        let v = v0.values[i] * t.cosh();
        let pv = pv_cauchy_at_node(&grid, &density, i);
        let reg = integrate_at_node(&grid, &density, i, |x, y| 1.0 / (1.0 - x * y));
        lhs.push(s.c0 * v + s.c1 / PI * pv + s.c2 / PI * reg);
        rhs.push(s.g.values[i]);
    }
    relative_error(&lhs, &rhs)
}

/// Ellipticity verdict of an equation without solving it.
pub fn check_ellipticity(eq: &Equation) -> Result<EllipticityScan> {
    let (symbol, r) = eq.symbol()?.into_value();
    Ok(ellipticity_scan(&symbol, r))
}
