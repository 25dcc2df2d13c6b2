//! Free-evolution space-time bounds: the mixed-norm size of `e^{it d²/dx²} u0`
//! on `[0,1]` is controlled by the mass of `u0`, for exponent pairs on the
//! admissibility line `2/p + 1/q = 1/2` with `p >= 4`.

use crate::data::{generate_data, DataFamily};
use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::norms::mixed_spacetime_norm;
use crate::report::{verdict_for_spread, EstimateReport, Provenance, SweepRow};
use crate::spacetime::SpaceTimeField;
use rayon::prelude::*;

const TIME_STEPS: usize = 256;

/// Stability band: the ratio may move at most this factor across the
/// resolution sweep.
const SPREAD_BAND: f64 = 2.0;

pub(crate) fn check_admissible(p: f64, q: f64) -> Result<()> {
    let lhs = if p.is_infinite() { 0.0 } else { 2.0 / p } + 1.0 / q;
    if p < 4.0 || (lhs - 0.5).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "inadmissible exponent pair (p,q)=({p},{q}): need 2/p + 1/q = 1/2 with p >= 4, \
             got 2/{p} + 1/{q} = {lhs}"
        )));
    }
    Ok(())
}

/// Measures `‖e^{it d²/dx²} u0‖_{L^p_t L^q_x([0,1])} / ‖u0‖_{L²}` for one
/// data family across a list of `(n, m)` resolutions. The ratio must be
/// stable within a factor of 2 over the sweep.
pub fn verify_strichartz(
    family: &DataFamily,
    p: f64,
    q: f64,
    resolutions: &[(usize, usize)],
    seed: u64,
) -> Result<EstimateReport> {
    check_admissible(p, q)?;
    if resolutions.is_empty() {
        return Err(Error::InvalidParameter("empty resolution sweep".into()));
    }
    let rows: Vec<SweepRow> = resolutions
        .par_iter()
        .map(|&(n, m)| -> Result<SweepRow> {
            let grid = FrequencyGrid::new(n, m)?;
            let u0 = generate_data(family, grid, seed)?;
            let mass = u0.l2_norm();
            if mass == 0.0 {
                return Err(Error::DomainError("zero initial data has no ratio".into()));
            }
            let dt = 1.0 / TIME_STEPS as f64;
            let flow = SpaceTimeField::sample(0.0, dt, TIME_STEPS, |t| u0.free_evolve(t))?;
            let value = mixed_spacetime_norm(&flow, p, q)?;
            Ok(SweepRow::new(n as f64, value, mass))
        })
        .collect::<Result<_>>()?;
    let (n0, m0) = resolutions[0];
    let verdict = verdict_for_spread(&rows, SPREAD_BAND);
    Ok(EstimateReport {
        estimate_id: format!("strichartz_p{p}_q{q}"),
        predicted_law: "LpLq norm of free wave <= C * L2 norm of data".into(),
        sweep: rows,
        fitted: None,
        verdict,
        provenance: Provenance::new(n0, m0, seed)
            .with("p", p)
            .with("q", q)
            .with("family", format!("{family:?}")),
    })
}
