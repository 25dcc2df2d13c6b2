//! Unit-constant norm comparisons on seeded random data.
//!
//! Three suites share one report: the block-mass `l^p` norm against the
//! dual-exponent coefficient norm, the block Orlicz norm against the
//! coefficient Orlicz norm, and the sup-in-time triangle bound for
//! combinations of step atoms. Each row records the worst ratio observed
//! over the trial set against its declared cap, so a row passes exactly
//! when its ratio column is at most 1.

use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, SpectralField};
use crate::norms::{fourier_lebesgue_norm, modulation_norm};
use crate::orlicz::{fourier_orlicz_norm, modulation_orlicz_norm};
use crate::report::{verdict_for_cap, EstimateReport, Provenance, SweepRow};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::lab_young;

/// Unit-constant inequalities may exceed 1 only by Luxemburg bisection
/// slack.
const UNIT_CAP: f64 = 1.0 + 1e-9;
/// Cap for the block-Orlicz / coefficient-Orlicz ratio. Averaging the
/// squared coefficients over a unit block can only lower the modular
/// (the square-root composition of the profile is convex by
/// construction), so the constant is 1; the slack absorbs bisection
/// error on both sides of the ratio.
const ORLICZ_CAP: f64 = 1.0 + 1e-6;
/// Block-mass exponents exercised by the first suite.
const LP_EXPONENTS: [f64; 3] = [2.0, 4.0, 8.0];
/// Atom index for the step-atom suite: atoms are normalized in the
/// `l^p`-sum of their step masses.
const ATOM_EXPONENT: f64 = 2.0;

/// Uniform modulus and uniform phase on every quarter-band mode.
fn random_field(grid: FrequencyGrid, rng: &mut ChaCha20Rng) -> Result<SpectralField> {
    let quarter = grid.n() as f64 * grid.dxi() / 4.0;
    let half = grid.n() as i64 / 2;
    let mut coeffs = vec![Complex64::ZERO; grid.n()];
    for j in -half..half {
        let r: f64 = rng.random();
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        if grid.xi(j).abs() <= quarter {
            coeffs[grid.slot(j).unwrap()] = Complex64::from_polar(r, phase);
        }
    }
    SpectralField::from_coeffs(grid, coeffs)
}

/// Worst `M_{2,p} / ||uhat||_{L^p}` ratio over the trial set. The
/// comparison norm is the dual-exponent Fourier-side norm, reached here
/// through the conjugate index.
fn lp_suite(grid: FrequencyGrid, p: f64, trials: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let u = random_field(grid, &mut rng)?;
        let block = modulation_norm(&u, p)?;
        let coeff = fourier_lebesgue_norm(&u, p / (p - 1.0))?;
        worst = worst.max(block / coeff);
    }
    Ok(worst)
}

/// Worst block-Orlicz / coefficient-Orlicz ratio over the trial set.
fn orlicz_suite(grid: FrequencyGrid, trials: usize, seed: u64) -> Result<f64> {
    let phi = lab_young(3.0)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let u = random_field(grid, &mut rng)?;
        let block = modulation_orlicz_norm(&phi, &u)?;
        let coeff = fourier_orlicz_norm(&phi, &u, 1.0)?;
        worst = worst.max(block / coeff);
    }
    Ok(worst)
}

/// A step atom on `[0, 1]`: breakpoints and one field per step, with the
/// step masses normalized to a unit `l^p` sum.
struct StepAtom {
    breaks: Vec<f64>,
    steps: Vec<SpectralField>,
}

impl StepAtom {
    fn random(grid: FrequencyGrid, rng: &mut ChaCha20Rng) -> Result<StepAtom> {
        let count = rng.random_range(2..=5);
        let mut breaks: Vec<f64> = (0..count - 1).map(|_| rng.random()).collect();
        breaks.push(0.0);
        breaks.push(1.0);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let mut steps = Vec::with_capacity(breaks.len() - 1);
        for _ in 1..breaks.len() {
            steps.push(random_field(grid, rng)?);
        }
        let total: f64 = steps.iter().map(|s| s.l2_norm().powf(ATOM_EXPONENT)).sum();
        let rescale = Complex64::from(total.powf(-1.0 / ATOM_EXPONENT));
        for s in &mut steps {
            *s = s.scale(rescale);
        }
        Ok(StepAtom { breaks, steps })
    }

    fn value_at(&self, t: f64) -> &SpectralField {
        let idx = self.breaks.partition_point(|&b| b <= t).clamp(1, self.steps.len());
        &self.steps[idx - 1]
    }
}

/// Worst `sup_t ||sum_i c_i a_i(t)||_{L^2} / sum_i |c_i|` ratio over the
/// trial set. Combinations of step atoms are piecewise constant, so
/// probing the midpoints of the union partition realizes the sup
/// exactly.
fn atom_suite(grid: FrequencyGrid, trials: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let count = rng.random_range(2..=4);
        let mut atoms = Vec::with_capacity(count);
        let mut coeffs = Vec::with_capacity(count);
        for _ in 0..count {
            atoms.push(StepAtom::random(grid, &mut rng)?);
            coeffs.push(rng.random_range(-1.0..1.0_f64));
        }
        let mut union: Vec<f64> = atoms.iter().flat_map(|a| a.breaks.iter().copied()).collect();
        union.sort_by(f64::total_cmp);
        union.dedup();
        let mut sup = 0.0_f64;
        for pair in union.windows(2) {
            let t = 0.5 * (pair[0] + pair[1]);
            let mut combo = SpectralField::zero(grid);
            for (atom, &c) in atoms.iter().zip(&coeffs) {
                combo = combo.add(&atom.value_at(t).scale(Complex64::from(c)))?;
            }
            sup = sup.max(combo.l2_norm());
        }
        let total: f64 = coeffs.iter().map(|c| c.abs()).sum();
        worst = worst.max(sup / total);
    }
    Ok(worst)
}

/// Runs the three comparison suites on `trials` random fields each and
/// returns one combined report. Rows list, in order: the block-`l^p`
/// ratios for `p = 2, 4, 8`, the block-Orlicz ratio at `n` and at `2n`
/// modes, and the step-atom ratio; each row's reference is its cap.
pub fn verify_embeddings(n: usize, m: usize, trials: usize, seed: u64) -> Result<EstimateReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trial count must be positive".into()));
    }
    let grid = FrequencyGrid::new(n, m)?;
    let doubled = FrequencyGrid::new(2 * n, m)?;
    let mut sweep = Vec::new();
    for (i, &p) in LP_EXPONENTS.iter().enumerate() {
        let worst = lp_suite(grid, p, trials, seed.wrapping_add(i as u64))?;
        sweep.push(SweepRow::new(p, worst, UNIT_CAP));
    }
    for (i, g) in [grid, doubled].into_iter().enumerate() {
        let worst = orlicz_suite(g, trials, seed.wrapping_add(10 + i as u64))?;
        sweep.push(SweepRow::new(g.n() as f64, worst, ORLICZ_CAP));
    }
    let worst = atom_suite(grid, trials, seed.wrapping_add(20))?;
    sweep.push(SweepRow::new(trials as f64, worst, UNIT_CAP));
    let verdict = verdict_for_cap(&sweep, 1.0);
    let provenance = Provenance::new(n, m, seed)
        .with("trials", trials)
        .with("rows", "p=2,4,8 block-lp; n,2n block-orlicz; step atoms");
    Ok(EstimateReport {
        estimate_id: "norm_embeddings".into(),
        predicted_law: "block lp <= dual-exponent coefficient norm; block Orlicz <= \
                        coefficient Orlicz; sup-t of atom combinations <= l1 of coefficients"
            .into(),
        sweep,
        fitted: None,
        verdict,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{generate_data, DataFamily};
    use crate::report::Verdict;

    #[test]
    fn plancherel_pair_has_unit_ratio() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let u = random_field(grid, &mut rng).unwrap();
        let block = modulation_norm(&u, 2.0).unwrap();
        let coeff = fourier_lebesgue_norm(&u, 2.0).unwrap();
        assert!((block / coeff - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flat_block_saturates_the_lp_comparison() {
        // An indicator of one unit block turns the comparison into an
        // equality for every exponent.
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let u = generate_data(&DataFamily::FlatBand { lo: 0.0, hi: 1.0 }, grid, 1).unwrap();
        for p in LP_EXPONENTS {
            let block = modulation_norm(&u, p).unwrap();
            let coeff = fourier_lebesgue_norm(&u, p / (p - 1.0)).unwrap();
            assert!((block / coeff - 1.0).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn block_orlicz_never_exceeds_coefficient_orlicz() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let phi = lab_young(3.0).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..5 {
            let u = random_field(grid, &mut rng).unwrap();
            let block = modulation_orlicz_norm(&phi, &u).unwrap();
            let coeff = fourier_orlicz_norm(&phi, &u, 1.0).unwrap();
            assert!(block / coeff <= ORLICZ_CAP, "ratio {}", block / coeff);
        }
    }

    #[test]
    fn single_atom_combination_is_exact() {
        // One atom, one step: the sup equals |c| times the step mass,
        // which the normalization pins to 1.
        let grid = FrequencyGrid::new(128, 4).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let field = random_field(grid, &mut rng).unwrap();
        let unit = field.scale(Complex64::from(1.0 / field.l2_norm()));
        let atom = StepAtom { breaks: vec![0.0, 1.0], steps: vec![unit] };
        let combo = atom.value_at(0.5).scale(Complex64::from(0.7));
        assert!((combo.l2_norm() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn combined_report_is_bounded() {
        let report = verify_embeddings(256, 4, 10, 42).unwrap();
        assert_eq!(report.verdict, Verdict::Bounded, "{}", report.to_json());
        assert_eq!(report.sweep.len(), 6);
        for row in &report.sweep {
            assert!(row.ratio <= 1.0, "{} vs cap {}", row.measured, row.reference);
        }
    }

    #[test]
    fn degenerate_arguments_rejected() {
        assert!(verify_embeddings(256, 4, 0, 1).is_err());
        assert!(verify_embeddings(255, 4, 5, 1).is_err());
    }
}
