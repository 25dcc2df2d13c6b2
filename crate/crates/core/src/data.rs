//! Deterministic initial-data families for the verification suites.
//!
//! Every family produces a real-nonnegative coefficient modulus, optional
//! seeded random phases, and a spectrum confined to the quarter band
//! `|xi| <= N*dxi/4` so that cubic products stay clear of the de-alias
//! cutoff throughout an evolution.

use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, SpectralField};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

/// Seed used by every canonical run unless overridden.
pub const DEFAULT_SEED: u64 = 0x5EED_CAFE;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DataFamily {
    /// `|u0^(xi)| = (1 + |xi|)^(-beta)`, truncated at the quarter band.
    PowerDecay { beta: f64 },
    /// `|u0^(xi)| = ln^(-gamma)(2 + |xi|)`, truncated at the quarter band.
    LogDecay { gamma: f64 },
    /// Indicator of `[lo, hi)`; must fit inside the quarter band.
    FlatBand { lo: f64, hi: f64 },
    /// `|u0^(xi)| = exp(-xi² / (2 width²))`, truncated at the quarter band.
    Gaussian { width: f64 },
    /// Same modulus as the wrapped profile, with an independent uniform
    /// phase on every mode drawn from the run seed.
    RandomPhase { profile: Box<DataFamily> },
}

impl DataFamily {
    pub fn random_phase(profile: DataFamily) -> Self {
        DataFamily::RandomPhase { profile: Box::new(profile) }
    }

    fn modulus(&self, xi: f64) -> f64 {
        match self {
            DataFamily::PowerDecay { beta } => (1.0 + xi.abs()).powf(-beta),
            DataFamily::LogDecay { gamma } => (2.0 + xi.abs()).ln().powf(-gamma),
            DataFamily::FlatBand { lo, hi } => {
                if xi >= *lo && xi < *hi {
                    1.0
                } else {
                    0.0
                }
            }
            DataFamily::Gaussian { width } => (-xi * xi / (2.0 * width * width)).exp(),
            DataFamily::RandomPhase { profile } => profile.modulus(xi),
        }
    }

    fn randomizes_phase(&self) -> bool {
        matches!(self, DataFamily::RandomPhase { .. })
    }

    fn validate(&self, quarter: f64) -> Result<()> {
        match self {
            DataFamily::PowerDecay { beta } if !(*beta > 0.0) => Err(Error::InvalidParameter(
                format!("power-decay exponent must be positive, got {beta}"),
            )),
            DataFamily::LogDecay { gamma } if !(*gamma > 0.0) => Err(Error::InvalidParameter(
                format!("log-decay exponent must be positive, got {gamma}"),
            )),
            DataFamily::Gaussian { width } if !(*width > 0.0) => Err(Error::InvalidParameter(
                format!("gaussian width must be positive, got {width}"),
            )),
            DataFamily::FlatBand { lo, hi } => {
                if !(hi > lo) {
                    return Err(Error::InvalidParameter(format!("empty band [{lo}, {hi})")));
                }
                if *lo < -quarter || *hi > quarter {
                    return Err(Error::ResolutionError(format!(
                        "band [{lo}, {hi}) leaves the de-aliased quarter band [-{quarter}, {quarter}]"
                    )));
                }
                Ok(())
            }
            DataFamily::RandomPhase { profile } => {
                if profile.randomizes_phase() {
                    return Err(Error::InvalidParameter(
                        "nested random-phase wrappers are not allowed".into(),
                    ));
                }
                profile.validate(quarter)
            }
            _ => Ok(()),
        }
    }
}

/// Build initial data from a family. The modulus is deterministic; a
/// `RandomPhase` wrapper adds one uniform phase per mode drawn in
/// ascending frequency order, so results are reproducible from `seed`.
pub fn generate_data(family: &DataFamily, grid: FrequencyGrid, seed: u64) -> Result<SpectralField> {
    let quarter = grid.n() as f64 * grid.dxi() / 4.0;
    family.validate(quarter)?;
    let random_phase = family.randomizes_phase();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let half = grid.n() as i64 / 2;
    let mut coeffs = vec![Complex64::ZERO; grid.n()];
    for j in -half..half {
        let xi = grid.xi(j);
        let phase = if random_phase { rng.random_range(0.0..std::f64::consts::TAU) } else { 0.0 };
        if xi.abs() > quarter {
            continue;
        }
        let r = family.modulus(xi);
        if r > 0.0 {
            coeffs[grid.slot(j).unwrap()] = Complex64::from_polar(r, phase);
        }
    }
    let out = SpectralField::from_coeffs(grid, coeffs)?;
    debug_assert!(out.dealias_margin() >= 0.9999);
    Ok(out)
}
