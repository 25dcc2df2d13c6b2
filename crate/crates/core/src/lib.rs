//! Numerical laboratory for the one-dimensional cubic Schroedinger
//! equation on large tori: spectral fields, dispersive norms, Orlicz
//! sequence spaces, variation norms, split-step and Picard solvers, and
//! batch verifiers for the quantitative estimates connecting them.

// Parameter guards are written `!(x > 0.0)` on purpose: the negation
// rejects NaN, which `x <= 0.0` would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod data;
pub mod error;
pub mod evolution;
pub mod fit;
pub mod grid;
pub mod lab;
pub mod norms;
pub mod orlicz;
pub mod report;
pub mod spacetime;
pub mod variation;

pub use error::{Error, Result};
pub use grid::{DyadicInterval, FrequencyGrid, SpectralField};
pub use spacetime::SpaceTimeField;
