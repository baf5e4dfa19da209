//! Harmonic analysis on the group `G = (-1, 1)`, `x o y = (x + y) / (1 + xy)`.
//!
//! The crate provides the group-Fourier transform, convolution operators given
//! by their symbols, and spectral solvers for convolution-type integral and
//! integro-differential equations on G.

pub mod config;
pub mod equations;
pub mod error;
pub mod gfourier;
pub mod group;
pub mod operators;
pub mod spaces;
pub mod special;
pub mod symbols;
pub mod verify;

pub use error::{Error, Outcome, Result, Warning};
pub use gfourier::{Builtin, Chart, FreqGrid, LineGrid, SampledFunction, Spectrum, Transform};
pub use group::{GroupPoint, LinePoint};
