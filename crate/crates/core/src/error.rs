use std::fmt;

use serde::Serialize;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point {0} lies outside the admissible band of (-1, 1)")]
    OutOfGroup(f64),

    #[error("group product left the representable band (arguments too close to +-1)")]
    BoundaryOverflow,

    #[error("line coordinate {0} is not finite")]
    NonFinite(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("symbol has a pole at xi = {0}")]
    Pole(f64),

    #[error("symbol is not elliptic: margin {margin:.3e} attained near xi = {xi}")]
    NotElliptic { margin: f64, xi: f64 },

    #[error("degenerate inner product ({0:.3e})")]
    Degenerate(f64),

    #[error("{what} does not decay at the grid ends (relative end magnitude {magnitude:.3e})")]
    NonDecaying { what: String, magnitude: f64 },

    #[error("integral diverges: quadrature grows by {growth:.2}% between half and full grid")]
    Divergent { growth: f64 },

    #[error("order hypothesis violated: term {term} has m_k + n_k = {total} > m = {order}")]
    OrderHypothesis { term: usize, total: u32, order: u32 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Non-fatal numerical diagnostics attached to a result.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Samples at the end of a grid are not negligible, so the quadrature
    /// truncates a non-trivial tail.
    Truncation {
        stage: String,
        magnitude: f64,
        tolerance: f64,
    },
    /// The symbol inverted by a solver is close to losing ellipticity.
    WeakEllipticity { margin: f64, xi: f64 },
    Note { message: String },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::Truncation {
                stage,
                magnitude,
                tolerance,
            } => write!(
                f,
                "truncation in {stage}: relative end magnitude {magnitude:.3e} exceeds {tolerance:.1e}"
            ),
            Warning::WeakEllipticity { margin, xi } => {
                write!(f, "weak ellipticity: margin {margin:.3e} near xi = {xi}")
            }
            Warning::Note { message } => f.write_str(message),
        }
    }
}

/// A value together with the warnings produced while computing it.
#[derive(Debug, Clone)]
pub struct Outcome<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

impl<T> Outcome<T> {
    pub fn new(value: T) -> Self {
        Outcome {
            value,
            warnings: Vec::new(),
        }
    }

    pub fn with_warnings(value: T, warnings: Vec<Warning>) -> Self {
        Outcome { value, warnings }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        Outcome {
            value: f(self.value),
            warnings: self.warnings,
        }
    }

    /// Moves the warnings into `sink` and returns the bare value.
    pub fn collect_into(self, sink: &mut Vec<Warning>) -> T {
        sink.extend(self.warnings);
        self.value
    }

    pub fn into_value(self) -> T {
        self.value
    }
}
