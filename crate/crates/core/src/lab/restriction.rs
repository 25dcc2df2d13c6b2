//! L⁴ space-time size of free waves with spectrum in a union of unit
//! frequency blocks: the measured ratio against the block-wise l⁴ data
//! size should grow no faster than sqrt(ln |I|) in the block count |I|.

use crate::data::{generate_data, DataFamily};
use crate::error::{Error, Result};
use crate::fit::fit_power_law;
use crate::grid::FrequencyGrid;
use crate::report::{verdict_for_growth, EstimateReport, Provenance, SweepRow};
use rayon::prelude::*;

/// Predicted exponent of `(ln |I|)^e` growth.
const PREDICTED_LOG_EXPONENT: f64 = 0.5;

/// Spectrum filling the first `|I|` unit blocks, either coherently (all
/// coefficients 1) or with one random phase per mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RestrictionData {
    Flat,
    RandomPhase,
}

impl RestrictionData {
    fn family(self, blocks: usize) -> DataFamily {
        let band = DataFamily::FlatBand { lo: 0.0, hi: blocks as f64 };
        match self {
            RestrictionData::Flat => band,
            RestrictionData::RandomPhase => DataFamily::random_phase(band),
        }
    }
}

/// Time samples per unit interval: a fixed multiple of the fastest beat
/// frequency `|I|²` so the quadrature stays a few times above Nyquist.
fn time_steps(blocks: usize) -> usize {
    ((4 * blocks * blocks) / 3).max(16)
}

/// Smallest power-of-two mode count whose quarter band holds `[0, blocks]`.
fn mode_count(blocks: usize, m: usize) -> usize {
    (4 * m * blocks).next_power_of_two()
}

/// `‖u‖⁴_{L⁴([0,1] x torus)}` of the free evolution of `u0`, streamed
/// frame by frame (left-endpoint rule in t, exact rectangle rule in x).
fn free_l4_fourth_power(u0: &crate::grid::SpectralField, steps: usize) -> f64 {
    let dt = 1.0 / steps as f64;
    let dx = u0.grid().dx();
    (0..steps)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 * dt;
            let phys = u0.free_evolve(t).to_physical();
            let quartic: f64 = phys.iter().map(|z| z.norm_sqr() * z.norm_sqr()).sum();
            quartic * dx * dt
        })
        .sum()
}

/// Measures `R(|I|) = ‖u‖_{L⁴([0,1] x torus)} / (Σ_{k in I} ‖u_{0,k}‖⁴_{L²})^{1/4}`
/// over the block counts in `i_sweep`, with data filling blocks `[0,|I|)`,
/// fits `R` against `ln |I|`, and checks the fitted exponent against 1/2.
pub fn verify_restriction_l4(
    data: RestrictionData,
    i_sweep: &[usize],
    m: usize,
    seed: u64,
) -> Result<EstimateReport> {
    if i_sweep.len() < 3 {
        return Err(Error::InvalidParameter(
            "restriction sweep needs at least 3 block counts".into(),
        ));
    }
    if i_sweep.iter().any(|&b| b < 2) {
        return Err(Error::InvalidParameter(
            "block counts below 2 leave no logarithm to fit against".into(),
        ));
    }
    let mut rows = Vec::with_capacity(i_sweep.len());
    for &blocks in i_sweep {
        let grid = FrequencyGrid::new(mode_count(blocks, m), m)?;
        let u0 = generate_data(&data.family(blocks), grid, seed)?;
        let lhs = free_l4_fourth_power(&u0, time_steps(blocks)).powf(0.25);
        let rhs: f64 =
            u0.unit_blocks().iter().map(|&(_, b)| b.powi(4)).sum::<f64>().powf(0.25);
        if rhs == 0.0 {
            return Err(Error::DomainError(format!("no spectral mass in the first {blocks} blocks")));
        }
        rows.push(SweepRow::new(blocks as f64, lhs / rhs, (blocks as f64).ln().sqrt()));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.x.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.measured).collect();
    let fit = fit_power_law(&xs, &ys)?;
    let verdict = verdict_for_growth(&fit, PREDICTED_LOG_EXPONENT);
    Ok(EstimateReport {
        estimate_id: "restriction_l4".into(),
        predicted_law: "R(|I|) <= C * sqrt(ln |I|)".into(),
        sweep: rows,
        fitted: Some(fit),
        verdict,
        provenance: Provenance::new(0, m, seed)
            .with("data", format!("{data:?}"))
            .with("i_sweep", format!("{i_sweep:?}")),
    })
}
