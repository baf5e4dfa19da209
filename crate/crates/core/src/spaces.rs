//! Norms of the weighted Lebesgue, Sobolev, Bessel potential and
//! Hölder-Zygmund spaces on G, computed in the line chart where the Haar
//! measure is `dt`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfourier::{phase_sum, SampledFunction, Transform};
use crate::operators::{bessel, d_g};

/// Relative growth between the half-grid and full-grid integrals that
/// marks a divergent norm.
const DIVERGENCE_GROWTH: f64 = 0.01;

pub const ZYGMUND_Y_MIN: f64 = 1e-3;
pub const ZYGMUND_Y_MAX: f64 = 10.0;
pub const ZYGMUND_Y_COUNT: usize = 64;

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 || p == f64::INFINITY {
        Ok(())
    } else {
        Err(Error::Invalid(format!("exponent p must lie in [1, inf], got {p}")))
    }
}

/// `(int |u(y)|^p dy / (1 - y^2))^{1/p}`, i.e. `(int |phi(t)|^p dt)^{1/p}`;
/// `p = inf` gives the largest sample.
///
/// The integral over the full grid is compared with the one over
/// `|t| <= T/2`; more than 1% growth is reported as divergence.
pub fn lp_norm(u: &SampledFunction, p: f64) -> Result<f64> {
    check_p(p)?;
    if p.is_infinite() {
        return Ok(u.max_abs());
    }
    let h = u.grid.spacing();
    let half = 0.5 * u.grid.half_width;
    let (mut full, mut inner) = (0.0, 0.0);
    for (j, v) in u.values.iter().enumerate() {
        let a = v.norm().powf(p);
        full += a;
        if u.grid.node(j).abs() <= half {
            inner += a;
        }
    }
    if full > 0.0 {
        let growth = if inner > 0.0 { full / inner - 1.0 } else { f64::INFINITY };
        if growth > DIVERGENCE_GROWTH {
            return Err(Error::Divergent {
                growth: 100.0 * growth,
            });
        }
    }
    Ok((h * full).powf(1.0 / p))
}

fn combine(parts: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        parts.iter().copied().fold(0.0, f64::max)
    } else {
        parts.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// `(sum_{k <= m} ||D_G^k u||_p^p)^{1/p}`.
pub fn sobolev_norm(tr: &Transform, u: &SampledFunction, m: usize, p: f64) -> Result<f64> {
    check_p(p)?;
    let parts = (0..=m)
        .map(|k| lp_norm(&d_g(tr, u, k)?.value, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(combine(&parts, p))
}

/// `||Lambda^s u||_p`.
pub fn bessel_norm(tr: &Transform, u: &SampledFunction, s: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    lp_norm(&bessel(tr, s, u)?.value, p)
}

/// The y-samples of the Zygmund supremum, logarithmically spaced.
pub fn zygmund_heights() -> Vec<f64> {
    let (a, b) = (ZYGMUND_Y_MIN.ln(), ZYGMUND_Y_MAX.ln());
    (0..ZYGMUND_Y_COUNT)
        .map(|i| (a + (b - a) * i as f64 / (ZYGMUND_Y_COUNT - 1) as f64).exp())
        .collect()
}

/// `sup_y y^{k - alpha} max_t |d^k/dy^k (P_y * phi)(t)|`, `k = [alpha] + 1`.
///
/// `P_y` is the Poisson kernel of the line acting on the pullback `phi`.
/// Its multiplier at line frequency `omega = 2 xi` is `e^{-|omega| y}`, so
/// the k-th y-derivative has G-symbol `(-2|xi|)^k e^{-2|xi| y}`.
pub fn zygmund_seminorm(tr: &Transform, u: &SampledFunction, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Invalid(format!(
            "smoothness alpha must be positive, got {alpha}"
        )));
    }
    let k = alpha.floor() as i32 + 1;
    let spec = tr.forward(u).value;
    let freqs = spec.freqs;
    let grid = u.grid;
    let heights = zygmund_heights();
    let sup = heights
        .par_iter()
        .map(|&y| {
            let weighted: Vec<Complex64> = spec
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let a = 2.0 * freqs.node(i).abs();
                    v * ((-a).powi(k) * (-a * y).exp() * freqs.weight(i))
                })
                .collect();
            let peak = (0..grid.count)
                .map(|j| {
                    phase_sum(freqs.first(), freqs.spacing(), &weighted, -2.0 * grid.node(j))
                        .norm()
                })
                .fold(0.0, f64::max)
                / std::f64::consts::PI;
            y.powf(k as f64 - alpha) * peak
        })
        .reduce(|| 0.0, f64::max);
    Ok(sup)
}

/// `||u||_p` plus the Zygmund seminorm.
pub fn zygmund_norm(tr: &Transform, u: &SampledFunction, alpha: f64, p: f64) -> Result<f64> {
    Ok(lp_norm(u, p)? + zygmund_seminorm(tr, u, alpha)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormKind {
    Lp,
    Sobolev { m: usize },
    Bessel { s: f64 },
    Zygmund { alpha: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormRequest {
    #[serde(flatten)]
    pub kind: NormKind,
    pub p: f64,
}

impl NormRequest {
    pub fn evaluate(&self, tr: &Transform, u: &SampledFunction) -> Result<f64> {
        match self.kind {
            NormKind::Lp => lp_norm(u, self.p),
            NormKind::Sobolev { m } => sobolev_norm(tr, u, m, self.p),
            NormKind::Bessel { s } => bessel_norm(tr, u, s, self.p),
            NormKind::Zygmund { alpha } => zygmund_norm(tr, u, alpha, self.p),
        }
    }
}
