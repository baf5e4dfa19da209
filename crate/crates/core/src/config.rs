//! JSON descriptions of equations, symbols and functions.
//!
//! Complex numbers may be written as a plain number, a `[re, im]` pair or an
//! object `{"re": .., "im": ..}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::equations::{Equation, IDESpec, LBSpec, PrandtlSpec, TricomiSpec};
use crate::error::{Error, Result};
use crate::gfourier::{Builtin, Chart, LineGrid, SampledFunction, DEFAULT_COUNT, DEFAULT_HALF_WIDTH};
use crate::symbols::{KernelTerm, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonComplex {
    Real(f64),
    Pair([f64; 2]),
    Object {
        re: f64,
        #[serde(default)]
        im: f64,
    },
}

impl From<JsonComplex> for Complex64 {
    fn from(c: JsonComplex) -> Self {
        match c {
            JsonComplex::Real(re) => Complex64::new(re, 0.0),
            JsonComplex::Pair([re, im]) | JsonComplex::Object { re, im } => Complex64::new(re, im),
        }
    }
}

impl Default for JsonComplex {
    fn default() -> Self {
        JsonComplex::Real(0.0)
    }
}

fn z(c: JsonComplex) -> Complex64 {
    c.into()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(rename = "T", default = "default_t")]
    pub half_width: f64,
    #[serde(rename = "N", default = "default_n")]
    pub count: usize,
}

fn default_t() -> f64 {
    DEFAULT_HALF_WIDTH
}

fn default_n() -> usize {
    DEFAULT_COUNT
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            half_width: DEFAULT_HALF_WIDTH,
            count: DEFAULT_COUNT,
        }
    }
}

impl GridConfig {
    pub fn line_grid(&self) -> Result<LineGrid> {
        LineGrid::new(self.half_width, self.count)
    }
}

/// A function on the grid: a named builtin pullback or explicit samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionConfig {
    Builtin {
        name: String,
        #[serde(default)]
        scale: Option<JsonComplex>,
    },
    Samples {
        values: Vec<JsonComplex>,
    },
}

impl FunctionConfig {
    pub fn sample(&self, grid: LineGrid, chart: Chart) -> Result<SampledFunction> {
        match self {
            FunctionConfig::Builtin { name, scale } => {
                let b = Builtin::parse(name).ok_or_else(|| {
                    Error::Invalid(format!(
                        "unknown builtin function '{name}' (expected sech, sech2 or gauss)"
                    ))
                })?;
                let s = scale.map_or(Complex64::new(1.0, 0.0), z);
                Ok(SampledFunction::builtin(grid, b).scale(s).with_chart(chart))
            }
            FunctionConfig::Samples { values } => {
                SampledFunction::new(grid, values.iter().map(|v| z(*v)).collect(), chart)
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoCoeffs {
    c0: JsonComplex,
    c1: JsonComplex,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThreeCoeffs {
    c0: JsonComplex,
    c1: JsonComplex,
    #[serde(default)]
    c2: JsonComplex,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermConfig {
    d: JsonComplex,
    #[serde(default)]
    m: u32,
    #[serde(default)]
    n: u32,
    kernel: FunctionConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdeCoeffs {
    order: u32,
    c: Vec<JsonComplex>,
    #[serde(default)]
    terms: Vec<TermConfig>,
}

fn coeffs<T: DeserializeOwned>(family: &str, v: &serde_json::Value) -> Result<T> {
    serde_json::from_value(v.clone())
        .map_err(|e| Error::Invalid(format!("coefficients of '{family}': {e}")))
}

/// `{"family": .., "coeffs": {..}, "rhs": {..}, "grid": {"T": .., "N": ..}}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationConfig {
    pub family: String,
    pub coeffs: serde_json::Value,
    pub rhs: FunctionConfig,
    #[serde(default)]
    pub grid: GridConfig,
}

impl EquationConfig {
    pub fn build(&self) -> Result<Equation> {
        let grid = self.grid.line_grid()?;
        let fam = self.family.as_str();
        Ok(match fam {
            "prandtl" => {
                let c: TwoCoeffs = coeffs(fam, &self.coeffs)?;
                Equation::Prandtl(PrandtlSpec {
                    c0: z(c.c0),
                    c1: z(c.c1),
                    f: self.rhs.sample(grid, Chart::Group)?,
                })
            }
            "tricomi" => {
                let c: ThreeCoeffs = coeffs(fam, &self.coeffs)?;
                Equation::Tricomi(TricomiSpec {
                    c0: z(c.c0),
                    c1: z(c.c1),
                    c2: z(c.c2),
                    g: self.rhs.sample(grid, Chart::Group)?,
                })
            }
            "lb" => {
                let c: TwoCoeffs = coeffs(fam, &self.coeffs)?;
                Equation::LB(LBSpec {
                    c0: z(c.c0),
                    c1: z(c.c1),
                    h: self.rhs.sample(grid, Chart::HalfInterval)?,
                })
            }
            "ide" => {
                let c: IdeCoeffs = coeffs(fam, &self.coeffs)?;
                let terms = c
                    .terms
                    .iter()
                    .map(|t| {
                        Ok(KernelTerm {
                            d: z(t.d),
                            m: t.m,
                            n: t.n,
                            kernel: t.kernel.sample(grid, Chart::Group)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Equation::Ide(IDESpec {
                    order: c.order,
                    c: c.c.iter().map(|v| z(*v)).collect(),
                    terms,
                    w: self.rhs.sample(grid, Chart::Group)?,
                })
            }
            other => {
                return Err(Error::Invalid(format!(
                    "unknown equation family '{other}' (expected prandtl, tricomi, lb or ide)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct TanhCoeffs {
    c0: JsonComplex,
    c1: JsonComplex,
    #[serde(default)]
    c2: JsonComplex,
    h: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CothCoeffs {
    #[serde(default = "unit")]
    scale: JsonComplex,
    #[serde(default = "pi")]
    h: f64,
}

fn unit() -> JsonComplex {
    JsonComplex::Real(1.0)
}

fn pi() -> f64 {
    PI
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantCoeffs {
    c: JsonComplex,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialCoeffs {
    c: Vec<JsonComplex>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct BesselCoeffs {
    s: f64,
}

/// `{"family": .., "coeffs": {..}, "xi": [..]}` describing a closed-form symbol.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolConfig {
    pub family: String,
    #[serde(default)]
    pub coeffs: serde_json::Value,
    /// Explicit evaluation points; the default table is the frequency grid.
    #[serde(default)]
    pub xi: Option<Vec<f64>>,
}

impl SymbolConfig {
    pub fn build(&self) -> Result<Symbol> {
        let fam = self.family.as_str();
        Ok(match fam {
            "prandtl" => {
                let c: TwoCoeffs = coeffs(fam, &self.coeffs)?;
                Symbol::prandtl(z(c.c0), z(c.c1))
            }
            "tricomi" => {
                let c: ThreeCoeffs = coeffs(fam, &self.coeffs)?;
                Symbol::tricomi(z(c.c0), z(c.c1), z(c.c2))
            }
            "lb" => {
                let c: TwoCoeffs = coeffs(fam, &self.coeffs)?;
                Symbol::lavrentjev_bitsadze(z(c.c0), z(c.c1))
            }
            "tanh" => {
                let c: TanhCoeffs = coeffs(fam, &self.coeffs)?;
                Symbol::tanh_family(z(c.c0), z(c.c1), z(c.c2), c.h)
            }
            "coth" => {
                let c: CothCoeffs = if self.coeffs.is_null() {
                    CothCoeffs { scale: unit(), h: PI }
                } else {
                    coeffs(fam, &self.coeffs)?
                };
                Symbol::coth(z(c.scale), c.h)
            }
            "constant" => {
                let c: ConstantCoeffs = coeffs(fam, &self.coeffs)?;
                Symbol::constant(z(c.c))
            }
            "polynomial" => {
                let c: PolynomialCoeffs = coeffs(fam, &self.coeffs)?;
                Symbol::polynomial(c.c.iter().map(|v| z(*v)).collect())
            }
            "bessel" => {
                let c: BesselCoeffs = coeffs(fam, &self.coeffs)?;
                Symbol::bessel(c.s)
            }
            other => {
                return Err(Error::Invalid(format!(
                    "unknown symbol family '{other}' (expected prandtl, tricomi, lb, tanh, coth, constant, polynomial or bessel)"
                )))
            }
        })
    }
}

/// `{"function": {..}, "grid": {..}}` for a single forward transform.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformConfig {
    pub function: FunctionConfig,
    #[serde(default)]
    pub grid: GridConfig,
    /// Also transform back and report the round-trip error.
    #[serde(default)]
    pub round_trip: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::Family;

    #[test]
    fn complex_forms() {
        let v: Vec<JsonComplex> = serde_json::from_str(r#"[1.5, [0, 2], {"re": -1, "im": 3}, {"re": 4}]"#).unwrap();
        let c: Vec<Complex64> = v.into_iter().map(Into::into).collect();
        assert_eq!(
            c,
            vec![
                Complex64::new(1.5, 0.0),
                Complex64::new(0.0, 2.0),
                Complex64::new(-1.0, 3.0),
                Complex64::new(4.0, 0.0)
            ]
        );
    }

    #[test]
    fn equation_parsing() {
        let text = r#"{"family": "tricomi", "coeffs": {"c0": 2, "c1": [1, 0], "c2": 0.5},
                       "rhs": {"kind": "builtin", "name": "sech"}, "grid": {"T": 16, "N": 1024}}"#;
        let cfg: EquationConfig = serde_json::from_str(text).unwrap();
        let eq = cfg.build().unwrap();
        assert_eq!(eq.family(), Family::Tricomi);
        match eq {
            Equation::Tricomi(s) => {
                assert_eq!(s.g.grid, LineGrid::new(16.0, 1024).unwrap());
                assert_eq!(s.c2, Complex64::new(0.5, 0.0));
            }
            _ => unreachable!(),
        }

        let text = r#"{"family": "ide", "coeffs": {"order": 1, "c": [1, 1],
                       "terms": [{"d": 1, "m": 1, "n": 0, "kernel": {"kind": "builtin", "name": "gauss"}}]},
                       "rhs": {"kind": "samples", "values": [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]},
                       "grid": {"T": 4, "N": 16}}"#;
        let cfg: EquationConfig = serde_json::from_str(text).unwrap();
        assert!(matches!(cfg.build().unwrap(), Equation::Ide(_)));
    }

    #[test]
    fn invalid_inputs() {
        let bad_family: EquationConfig = serde_json::from_str(
            r#"{"family": "heat", "coeffs": {}, "rhs": {"kind": "builtin", "name": "sech"}}"#,
        )
        .unwrap();
        assert!(matches!(bad_family.build(), Err(Error::Invalid(_))));
        let bad_builtin: EquationConfig = serde_json::from_str(
            r#"{"family": "lb", "coeffs": {"c0": 1, "c1": 1}, "rhs": {"kind": "builtin", "name": "cos"}}"#,
        )
        .unwrap();
        assert!(bad_builtin.build().is_err());
        let short: EquationConfig = serde_json::from_str(
            r#"{"family": "lb", "coeffs": {"c0": 1, "c1": 1}, "rhs": {"kind": "samples", "values": [1, 2]}}"#,
        )
        .unwrap();
        assert!(matches!(short.build(), Err(Error::GridMismatch(_))));
        let missing: EquationConfig = serde_json::from_str(
            r#"{"family": "prandtl", "coeffs": {"c0": 1}, "rhs": {"kind": "builtin", "name": "sech"}}"#,
        )
        .unwrap();
        assert!(missing.build().is_err());
        assert!(serde_json::from_str::<EquationConfig>(r#"{"family": "lb", "extra": 1}"#).is_err());
    }

    #[test]
    fn symbol_parsing() {
        let cfg: SymbolConfig =
            serde_json::from_str(r#"{"family": "prandtl", "coeffs": {"c0": 1, "c1": 1}}"#).unwrap();
        let a = cfg.build().unwrap();
        assert!((a.eval(0.0).unwrap() - Complex64::new(1.0 + 2.0 / PI, 0.0)).norm() < 1e-15);
        let cfg: SymbolConfig = serde_json::from_str(r#"{"family": "coth"}"#).unwrap();
        assert!(cfg.build().unwrap().eval(0.0).is_err());
        let cfg: SymbolConfig = serde_json::from_str(r#"{"family": "weird"}"#).unwrap();
        assert!(cfg.build().is_err());
    }
}
