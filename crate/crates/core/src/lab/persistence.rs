//! Persistence of the block-Orlicz size under the nonlinear flow.
//!
//! For small data the `l^Phi L^2` size of the solution must stay within a
//! fixed factor of its initial value over the whole simulated window. The
//! verifier evolves with the symmetric split-step scheme, measures the
//! norm on every stored frame, and caps the worst ratio.

use crate::error::{Error, Result};
use crate::evolution::{splitstep_evolve, EvolutionConfig};
use crate::grid::SpectralField;
use crate::orlicz::modulation_orlicz_norm;
use crate::report::{verdict_for_cap, EstimateReport, Provenance, SweepRow, Verdict};

use super::lab_young;

/// Initial data must be at most this large in the block-Orlicz norm.
const SMALL_DATA: f64 = 0.1;
/// The norm may grow by at most this factor over the window.
const PERSISTENCE_BAND: f64 = 4.0;

/// Evolves `u0` under `cfg` and reports the per-frame ratio
/// `norm(u(t)) / norm(u0)` in the block-Orlicz norm with parameter
/// `gamma`. Requires `gamma > 2` and small initial data; identically
/// zero data passes trivially with an empty sweep.
pub fn verify_norm_persistence(
    u0: &SpectralField,
    gamma: f64,
    cfg: &EvolutionConfig,
) -> Result<EstimateReport> {
    if !(gamma > 2.0) {
        return Err(Error::InvalidParameter(format!(
            "persistence comparisons need gamma > 2, got {gamma}"
        )));
    }
    let phi = lab_young(gamma)?;
    let initial = modulation_orlicz_norm(&phi, u0)?;
    let grid = u0.grid();
    let provenance = Provenance::new(grid.n(), grid.m(), 0)
        .with("gamma", gamma)
        .with("t_final", cfg.t_final)
        .with("steps", cfg.steps);
    let predicted_law =
        format!("sup_t norm(u(t)) <= {PERSISTENCE_BAND} * norm(u0) in block-Orlicz");
    if initial == 0.0 {
        // Nothing can grow out of zero data; the bound holds vacuously.
        return Ok(EstimateReport {
            estimate_id: "orlicz_persistence".into(),
            predicted_law,
            sweep: Vec::new(),
            fitted: None,
            verdict: Verdict::Bounded,
            provenance: provenance.with("zero_data", "vacuous pass"),
        });
    }
    if initial > SMALL_DATA {
        return Err(Error::InvalidParameter(format!(
            "initial block-Orlicz size {initial} exceeds the small-data threshold {SMALL_DATA}"
        )));
    }
    let trajectory = splitstep_evolve(u0, cfg)?;
    let mut sweep = Vec::with_capacity(trajectory.len());
    for idx in 0..trajectory.len() {
        let norm = modulation_orlicz_norm(&phi, trajectory.frame(idx))?;
        sweep.push(SweepRow::new(trajectory.time(idx), norm, initial));
    }
    let verdict = verdict_for_cap(&sweep, PERSISTENCE_BAND);
    Ok(EstimateReport {
        estimate_id: "orlicz_persistence".into(),
        predicted_law,
        sweep,
        fitted: None,
        verdict,
        provenance: provenance.with("initial_norm", initial),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{generate_data, DataFamily, DEFAULT_SEED};
    use crate::evolution::Nonlinearity;
    use crate::grid::FrequencyGrid;
    use num_complex::Complex64;

    fn small_gaussian(grid: FrequencyGrid, target: f64) -> SpectralField {
        let u = generate_data(&DataFamily::Gaussian { width: 4.0 }, grid, DEFAULT_SEED).unwrap();
        let phi = lab_young(3.0).unwrap();
        let size = modulation_orlicz_norm(&phi, &u).unwrap();
        u.scale(Complex64::from(target / size))
    }

    #[test]
    fn zero_data_passes_vacuously() {
        let grid = FrequencyGrid::new(128, 4).unwrap();
        let cfg = EvolutionConfig::new(0.1, 20).unwrap();
        let report =
            verify_norm_persistence(&SpectralField::zero(grid), 3.0, &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Bounded);
        assert!(report.sweep.is_empty());
    }

    #[test]
    fn free_flow_keeps_the_ratio_at_one() {
        // Without the nonlinearity every mode only rotates in phase, so
        // block masses and hence the norm are frame-by-frame invariant.
        let grid = FrequencyGrid::new(128, 4).unwrap();
        let u0 = small_gaussian(grid, 0.05);
        let cfg = EvolutionConfig::new(0.1, 50)
            .unwrap()
            .with_stride(10)
            .with_nonlinearity(Nonlinearity::Off);
        let report = verify_norm_persistence(&u0, 3.0, &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Bounded);
        for row in &report.sweep {
            assert!((row.ratio - 1.0).abs() <= 1e-10, "t = {}, ratio = {}", row.x, row.ratio);
        }
    }

    #[test]
    fn small_data_stays_in_band() {
        let grid = FrequencyGrid::new(256, 4).unwrap();
        let u0 = small_gaussian(grid, 0.05);
        let cfg = EvolutionConfig::new(0.25, 250).unwrap().with_stride(25);
        let report = verify_norm_persistence(&u0, 3.0, &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Bounded, "{}", report.to_json());
        // Small data barely moves the norm, far from the cap.
        for row in &report.sweep {
            assert!(row.ratio < 1.5, "ratio {}", row.ratio);
        }
    }

    #[test]
    fn oversized_data_and_bad_gamma_rejected() {
        let grid = FrequencyGrid::new(128, 4).unwrap();
        let cfg = EvolutionConfig::new(0.1, 20).unwrap();
        let big = small_gaussian(grid, 0.5);
        assert!(verify_norm_persistence(&big, 3.0, &cfg).is_err());
        let ok = small_gaussian(grid, 0.05);
        assert!(verify_norm_persistence(&ok, 2.0, &cfg).is_err());
    }
}
