//! End-to-end acceptance gate: eleven numbered checks, each regenerating
//! its own data from the run seed and condensing into a single pass/fail
//! line. The same entry points back the `acceptance` integration test and
//! the command-line `acceptance` subcommand, so the two always agree.
//!
//! Every tolerance is frozen here as a named constant. Checks that rely
//! on calibrated bands (the conjugate-profile comparisons, the indicator
//! ratio cap) document the calibration next to the constant instead of
//! recomputing it at run time.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::data::{generate_data, DataFamily};
use crate::evolution::{
    galilean_boost, galilean_reference, mass_energy, picard_iterate, rescale, splitstep_evolve,
    EvolutionConfig, Nonlinearity, PicardMonitor,
};
use crate::fit::fit_power_law;
use crate::grid::{FrequencyGrid, SpectralField};
use crate::lab::{
    bilinear_identity_check, lab_young, sharpness_log_ratio, verify_bilinear_inequality,
    verify_bilinear_kernel, verify_embeddings, verify_norm_persistence, verify_restriction_l4,
    verify_scaling_law, verify_strichartz, RestrictionData,
};
use crate::norms::{lebesgue_norm, modulation_norm, sobolev_norm};
use crate::orlicz::{
    block_l2_average, conjugate_luxemburg_norm, indicator_conjugate_norm, luxemburg_norm,
    ConjugateTable, YoungFunction,
};
use crate::variation::{
    duality_pairing, up_upper_bound, vp_norm, vp_norm_bruteforce, AtomicDecomposition, StepPath,
    TimeSampledPath,
};
use crate::{Error, Result};

pub const CRITERION_COUNT: usize = 11;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 1729;

// -- check 1: transform exactness -----------------------------------------
const EXACTNESS_TOL: f64 = 1e-10;
const EXACTNESS_DRAWS: usize = 100;

// -- check 2: conserved quantities -----------------------------------------
const MASS_DRIFT_TOL: f64 = 1e-10;
const ENERGY_RATIO_BAND: (f64, f64) = (3.5, 4.5);

// -- check 3: symmetry covariance ------------------------------------------
const RESCALE_TOL: f64 = 1e-6;
const GALILEAN_TOL: f64 = 1e-5;

// -- check 6: product-transform checks --------------------------------------
const KERNEL_TOL_STATIC: f64 = 1e-10;
const KERNEL_TOL_OSCILLATORY: f64 = 1e-6;
const CUTOFF_EXPONENT_BAND: (f64, f64) = (-0.6, -0.4);
const IDENTITY_WINDOW_TOL: f64 = 0.05;

// -- check 7: quarter-power growth ------------------------------------------
const FLAT_SPREAD_CAP: f64 = 2.0;
const ENSEMBLE_EXPONENT_CAP: f64 = 0.65;
const ENSEMBLE_SEEDS: u64 = 20;

// -- check 8: variation machinery -------------------------------------------
const CHAIN_MATCH_TOL: f64 = 1e-12;
const SQUARE_SUM_SLACK: f64 = 1e-9;
const DUALITY_SLACK: f64 = 1e-9;

// -- check 9: sequence-space laws -------------------------------------------
const NORM_AXIOM_TOL: f64 = 1e-9;
const HOLDER_CONSTANT: f64 = 2.0;
/// Correction constant making the square-root-exponent profile (and its
/// own square root) convex on the scan range; reproduced by the
/// constant-chooser test in the Orlicz module.
const SQRT_PROFILE_CORRECTION: f64 = 5.48;
/// Same role for the quarter-exponent profile.
const QUARTIC_PROFILE_CORRECTION: f64 = 74.4;
/// Measured range of `conj(t) * ln^4(1/t) / t` over `t in [1e-10, 1e-3]`
/// for the square-root profile is [1.004e-2, 9.787e-2] (slow downward
/// drift: the comparison constant converges at logarithmic speed). The
/// frozen band keeps a factor-2 margin on each side.
const CONJUGATE_COMPARISON_BAND: (f64, f64) = (5e-3, 2e-1);
/// The quarter-exponent conjugate has a near-linear stretch of slope
/// `s0 = C^(-3) = 2.43e-6` above its positivity threshold, so the
/// indicator norm sits at `s0 * (1 - 1/N)` for every desk-scale N and the
/// ratio against `N / ln^12 N` peaks at `s0 * 12^12 / e^12 = 133` near
/// `N = e^12`. Measured maximum over N in {16..4096} is 65.1; the cap is
/// the analytic ceiling plus margin.
const INDICATOR_RATIO_CAP: f64 = 140.0;
const AVERAGING_CONTRACTION_CAP: f64 = 1.0 + 1e-6;

// -- check 10: dilation law ---------------------------------------------------
const SHARPNESS_BAND: (f64, f64) = (0.25, 4.0);

// -- check 11: fixed-point iteration ------------------------------------------
const SMALL_DATA_SIZE: f64 = 0.1;
const FIXED_POINT_TOL: f64 = 1e-4;
const PICARD_ITERS: usize = 8;

/// Outcome of one acceptance check.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Measured quantities backing the verdict, already formatted.
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2}/11 {:<22} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.index,
            self.name,
            self.detail
        )
    }
}

pub const CRITERION_NAMES: [&str; CRITERION_COUNT] = [
    "spectral_exactness",
    "conservation_laws",
    "symmetry_covariance",
    "embedding_constants",
    "strichartz_stability",
    "bilinear_kernel_tail",
    "restriction_growth",
    "variation_machinery",
    "orlicz_asymptotics",
    "dilation_law",
    "picard_contraction",
];

/// Run one numbered check (1-based). An error inside a check is an honest
/// failure — it is reported, never swallowed.
pub fn run_criterion(index: usize, seed: u64) -> CriterionResult {
    let outcome = match index {
        1 => spectral_exactness(seed),
        2 => conservation_laws(seed),
        3 => symmetry_covariance(seed),
        4 => embedding_constants(seed),
        5 => strichartz_stability(seed),
        6 => bilinear_kernel_tail(seed),
        7 => restriction_growth(seed),
        8 => variation_machinery(seed),
        9 => orlicz_asymptotics(seed),
        10 => dilation_law(seed),
        11 => picard_contraction(seed),
        _ => Err(Error::InvalidParameter(format!("criterion index {index} out of range 1..=11"))),
    };
    let name = CRITERION_NAMES[index.clamp(1, CRITERION_COUNT) - 1];
    match outcome {
        Ok((passed, detail)) => CriterionResult { index, name, passed, detail },
        Err(e) => {
            CriterionResult { index, name, passed: false, detail: format!("errored: {e}") }
        }
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERION_COUNT).map(|k| run_criterion(k, seed)).collect()
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Random coefficients on the full mode range (no band cap): exactness
/// checks must hold on the whole discrete space, not just generated data.
fn random_field(grid: FrequencyGrid, rng: &mut ChaCha20Rng) -> SpectralField {
    let coeffs = (0..grid.n())
        .map(|_| {
            let r: f64 = rng.random();
            let th: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, th)
        })
        .collect();
    SpectralField::from_coeffs(grid, coeffs).expect("coefficient count matches the grid")
}

// --------------------------------------------------------------------------
// 1. Parseval identity, projector algebra, free-flow unitarity and group law.
// --------------------------------------------------------------------------
fn spectral_exactness(seed: u64) -> Result<(bool, String)> {
    let grid = FrequencyGrid::new(256, 8)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let blocks = (grid.n() / grid.m() / 2) as i64;
    let (mut parseval, mut idem, mut orth, mut unitary, mut group) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..EXACTNESS_DRAWS {
        let u = random_field(grid, &mut rng);
        let scale = u.l2_norm();

        parseval = parseval.max(rel_err(lebesgue_norm(&u, 2.0)?, scale));

        let width = [1i64, 2, 4][rng.random_range(0..3)];
        let lo = rng.random_range(-blocks..blocks - width) as f64;
        let p = u.project_band(lo, lo + width as f64);
        idem = idem.max(p.project_band(lo, lo + width as f64).sub(&p)?.l2_norm() / scale);
        orth = orth.max(p.inner(&u.sub(&p)?)?.norm() / (scale * scale));

        let s: f64 = rng.random_range(-2.0..2.0);
        let t: f64 = rng.random_range(-2.0..2.0);
        unitary = unitary.max(rel_err(u.free_evolve(t).l2_norm(), scale));
        group = group
            .max(u.free_evolve(s).free_evolve(t).sub(&u.free_evolve(s + t))?.l2_norm() / scale);
    }
    let worst = parseval.max(idem).max(orth).max(unitary).max(group);
    Ok((
        worst <= EXACTNESS_TOL,
        format!(
            "parseval {parseval:.1e} projector {idem:.1e}/{orth:.1e} unitary {unitary:.1e} \
             group {group:.1e} over {EXACTNESS_DRAWS} draws (tol {EXACTNESS_TOL:.0e})"
        ),
    ))
}

// --------------------------------------------------------------------------
// 2. Mass exactly conserved by the split scheme; energy drift second order.
// --------------------------------------------------------------------------
fn conservation_laws(seed: u64) -> Result<(bool, String)> {
    let grid = FrequencyGrid::new(1024, 8)?;
    let u0 = generate_data(&DataFamily::Gaussian { width: 4.0 }, grid, seed)?;
    let (m0, e0) = mass_energy(&u0);

    let coarse_cfg = EvolutionConfig::new(1.0, 1000)?
        .with_stride(100)
        .with_nonlinearity(Nonlinearity::Defocusing);
    let coarse = splitstep_evolve(&u0, &coarse_cfg)?;
    let mut mass_drift = 0.0f64;
    for frame in coarse.frames() {
        mass_drift = mass_drift.max(rel_err(mass_energy(frame).0, m0));
    }

    let fine_cfg = EvolutionConfig::new(1.0, 2000)?
        .with_stride(2000)
        .with_nonlinearity(Nonlinearity::Defocusing);
    let fine = splitstep_evolve(&u0, &fine_cfg)?;
    let drift_coarse = (mass_energy(coarse.frame(coarse.len() - 1)).1 - e0).abs();
    let drift_fine = (mass_energy(fine.frame(fine.len() - 1)).1 - e0).abs();
    let ratio = drift_coarse / drift_fine.max(1e-300);

    let passed = mass_drift <= MASS_DRIFT_TOL
        && ratio >= ENERGY_RATIO_BAND.0
        && ratio <= ENERGY_RATIO_BAND.1;
    Ok((
        passed,
        format!(
            "mass drift {mass_drift:.1e} (tol {MASS_DRIFT_TOL:.0e}); energy drift ratio \
             {ratio:.2} per step halving (band [{}, {}])",
            ENERGY_RATIO_BAND.0, ENERGY_RATIO_BAND.1
        ),
    ))
}

// --------------------------------------------------------------------------
// 3. Critical-norm invariance under dilation; Galilean covariance of the
//    integrator up to its splitting order.
// --------------------------------------------------------------------------
fn symmetry_covariance(seed: u64) -> Result<(bool, String)> {
    let grid = FrequencyGrid::new(1024, 8)?;
    let base = generate_data(
        &DataFamily::random_phase(DataFamily::Gaussian { width: 2.0 }),
        grid,
        seed,
    )?;
    // The negative-order homogeneous norm needs a zero mean mode.
    let mut coeffs = base.coeffs().to_vec();
    if let Some(k) = grid.slot(0) {
        coeffs[k] = Complex64::ZERO;
    }
    let u = SpectralField::from_coeffs(grid, coeffs)?;
    let href = sobolev_norm(&u, -0.5, true)?;
    let mut rescale_err = 0.0f64;
    for lambda in [2u32, 4] {
        let v = rescale(&u, lambda)?;
        rescale_err = rescale_err.max(rel_err(sobolev_norm(&v, -0.5, true)?, href));
    }

    let ggrid = FrequencyGrid::new(512, 8)?;
    let u0 = generate_data(&DataFamily::Gaussian { width: 2.0 }, ggrid, seed)?
        .scale(Complex64::new(0.5, 0.0));
    let speed = 2.0;
    let boosted = galilean_boost(&u0, speed)?;
    let norm0 = u0.l2_norm();
    let mut errs = [0.0f64; 2];
    for (slot, steps) in [(0usize, 500usize), (1, 1000)] {
        let cfg = EvolutionConfig::new(0.5, steps)?
            .with_stride(steps / 50)
            .with_nonlinearity(Nonlinearity::Defocusing);
        let direct = splitstep_evolve(&boosted, &cfg)?;
        let reference = galilean_reference(&splitstep_evolve(&u0, &cfg)?, speed)?;
        let mut worst = 0.0f64;
        for k in 0..direct.len() {
            worst = worst.max(direct.frame(k).sub(reference.frame(k))?.l2_norm() / norm0);
        }
        errs[slot] = worst;
    }

    // The discrete flow intertwines with the boost map exactly (both
    // substeps commute with it), so the measured gap sits at roundoff;
    // refinement must not worsen it beyond noise.
    let passed = rescale_err <= RESCALE_TOL && errs[1] <= GALILEAN_TOL && errs[1] <= 1.5 * errs[0];
    Ok((
        passed,
        format!(
            "dilation invariance {rescale_err:.1e} (tol {RESCALE_TOL:.0e}); boost covariance \
             {:.1e} -> {:.1e} under step halving (tol {GALILEAN_TOL:.0e})",
            errs[0], errs[1]
        ),
    ))
}

// --------------------------------------------------------------------------
// 4. Embedding constants: sequence-space comparisons hold with constant 1,
//    stable when the grid doubles.
// --------------------------------------------------------------------------
fn embedding_constants(seed: u64) -> Result<(bool, String)> {
    let report = verify_embeddings(512, 8, 50, seed)?;
    let r = report.ratios();
    // Rows: three dual-exponent comparisons, the block-average comparison
    // at n and 2n, and the step-atom bound.
    let stability = (r[3] - r[4]).abs() <= 0.05 * r[3].max(r[4]);
    let passed = report.verdict.passed() && stability;
    Ok((
        passed,
        format!(
            "dual-exponent worst {:.9}; block-average constant {:.6} / {:.6} across grid \
             doubling; step-atom worst {:.9} (caps 1)",
            r[0].max(r[1]).max(r[2]),
            r[3],
            r[4],
            r[5]
        ),
    ))
}

// --------------------------------------------------------------------------
// 5. Space-time norms of the free flow stay within a factor 2 of the
//    data-norm prediction across resolution doublings.
// --------------------------------------------------------------------------
fn strichartz_stability(seed: u64) -> Result<(bool, String)> {
    let resolutions = [(512usize, 8usize), (1024, 8), (1024, 16)];
    let pairs = [(6.0, 6.0), (8.0, 4.0), (f64::INFINITY, 2.0)];
    let mut families: Vec<(DataFamily, u64)> = vec![
        (DataFamily::Gaussian { width: 4.0 }, seed),
        (DataFamily::FlatBand { lo: 0.0, hi: 8.0 }, seed),
    ];
    for k in 0..10 {
        families.push((
            DataFamily::random_phase(DataFamily::PowerDecay { beta: 1.0 }),
            seed.wrapping_add(k),
        ));
    }
    let mut all_pass = true;
    let mut worst_spread = 0.0f64;
    let mut sweeps = 0usize;
    for (family, s) in &families {
        for &(p, q) in &pairs {
            let report = verify_strichartz(family, p, q, &resolutions, *s)?;
            let ratios = report.ratios();
            let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
            let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
            worst_spread = worst_spread.max(hi / lo);
            all_pass &= report.verdict.passed();
            sweeps += 1;
        }
    }
    Ok((
        all_pass,
        format!("{sweeps} sweeps x {} resolutions; worst ratio spread {worst_spread:.3} (cap 2)",
            resolutions.len()),
    ))
}

// --------------------------------------------------------------------------
// 6. Product-transform kernel identity, inverse-square-root tail law, and
//    windowed time-integral convergence to the frequency-side value.
// --------------------------------------------------------------------------
fn bilinear_kernel_tail(seed: u64) -> Result<(bool, String)> {
    let _ = seed; // fully deterministic flat-band construction
    let grid = FrequencyGrid::new(256, 8)?;
    let u0 = generate_data(&DataFamily::FlatBand { lo: 0.0, hi: 1.0 }, grid, 0)?;
    let v0 = generate_data(&DataFamily::FlatBand { lo: 3.0, hi: 4.0 }, grid, 0)?;
    let js: Vec<i64> = (-64..64).collect();
    let err_static = verify_bilinear_kernel(&u0, &v0, &[0.0], &js)?;
    let err_osc = verify_bilinear_kernel(&u0, &v0, &[0.7], &js)?;

    let wgrid = FrequencyGrid::new(2048, 8)?;
    let wu = generate_data(&DataFamily::FlatBand { lo: 0.0, hi: 1.0 }, wgrid, 0)?;
    let wv = wu.clone();
    let sweep = verify_bilinear_inequality(&wu, &wv, &[8.0, 16.0, 32.0, 64.0], 2.0)?;
    let exponent = sweep.fitted.as_ref().map(|f| f.exponent).unwrap_or(f64::NAN);

    // Difference set [0,1) - [3,4) = [-4,-2): the tail beyond cutoff 2.5
    // carries all the product mass, so the identity value is nonzero.
    let check = bilinear_identity_check(&u0, &v0, 2.5, 0.5)?;
    let window_gap = (check.windowed.last().copied().unwrap_or(0.0) / check.reference - 1.0).abs();

    let passed = err_static <= KERNEL_TOL_STATIC
        && err_osc <= KERNEL_TOL_OSCILLATORY
        && sweep.verdict.passed()
        && exponent >= CUTOFF_EXPONENT_BAND.0
        && exponent <= CUTOFF_EXPONENT_BAND.1
        && check.converged
        && window_gap.is_finite()
        && window_gap <= IDENTITY_WINDOW_TOL;
    Ok((
        passed,
        format!(
            "kernel error {err_static:.1e}/{err_osc:.1e}; tail exponent {exponent:.3} \
             (band [{}, {}]); windowed integral within {window_gap:.3} of the identity",
            CUTOFF_EXPONENT_BAND.0, CUTOFF_EXPONENT_BAND.1
        ),
    ))
}

// --------------------------------------------------------------------------
// 7. Quarter-power norm of flat data grows like sqrt(ln |I|); random-phase
//    ensemble stays at or below that growth.
// --------------------------------------------------------------------------
fn restriction_growth(seed: u64) -> Result<(bool, String)> {
    let flat = verify_restriction_l4(RestrictionData::Flat, &[4, 8, 16, 32, 64, 128, 256], 8, seed)?;
    let ratios = flat.ratios();
    let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let spread = hi / lo;

    let blocks = [4usize, 8, 16, 32, 64];
    let mut mean_r = vec![0.0f64; blocks.len()];
    let mut per_seed_max = f64::MIN;
    for k in 0..ENSEMBLE_SEEDS {
        let report = verify_restriction_l4(
            RestrictionData::RandomPhase,
            &blocks,
            4,
            seed.wrapping_add(k),
        )?;
        for (slot, row) in report.sweep.iter().enumerate() {
            mean_r[slot] += row.measured / ENSEMBLE_SEEDS as f64;
        }
        let fit = report
            .fitted
            .as_ref()
            .ok_or_else(|| Error::ConvergenceFailure("ensemble sweep carries no fit".into()))?;
        per_seed_max = per_seed_max.max(fit.exponent);
    }
    let logs: Vec<f64> = blocks.iter().map(|&b| (b as f64).ln()).collect();
    let ensemble_exponent = fit_power_law(&logs, &mean_r)?.exponent;

    let passed =
        lo > 0.0 && spread <= FLAT_SPREAD_CAP && ensemble_exponent <= ENSEMBLE_EXPONENT_CAP;
    Ok((
        passed,
        format!(
            "flat ratio spread {spread:.3} over |I| in 4..256 (cap {FLAT_SPREAD_CAP}); ensemble \
             exponent {ensemble_exponent:.3} over {ENSEMBLE_SEEDS} seeds (cap \
             {ENSEMBLE_EXPONENT_CAP}, per-seed max {per_seed_max:.3})"
        ),
    ))
}

// --------------------------------------------------------------------------
// 8. Variation-norm machinery: chain DP equals brute force, block square
//    sums dominate windowed variation, and the atomic/variation duality
//    sandwich holds.
// --------------------------------------------------------------------------
fn variation_machinery(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let grid = FrequencyGrid::new(64, 4)?;

    let mut chain_err = 0.0f64;
    for _ in 0..100 {
        let samples = rng.random_range(2..=12);
        let mut t = 0.0;
        let mut times = Vec::with_capacity(samples);
        let mut values = Vec::with_capacity(samples);
        for _ in 0..samples {
            t += rng.random_range(0.05..0.3);
            times.push(t);
            values.push(random_field(grid, &mut rng));
        }
        let p = [1.0, 1.5, 2.0, 3.0][rng.random_range(0..4)];
        let tail: bool = rng.random();
        let path = TimeSampledPath::new(times, values, tail)?;
        chain_err = chain_err.max(rel_err(vp_norm(&path, p)?.value, vp_norm_bruteforce(&path, p)?));
    }

    let bgrid = FrequencyGrid::new(128, 8)?;
    let mut square_gap = f64::MIN;
    for _ in 0..50 {
        let mut t = 0.0;
        let mut times = Vec::new();
        let mut values = Vec::new();
        for _ in 0..6 {
            t += rng.random_range(0.05..0.2);
            times.push(t);
            values.push(random_field(bgrid, &mut rng));
        }
        let path = TimeSampledPath::new(times, values, false)?;
        let lo = rng.random_range(-8i64..5);
        let hi = lo + rng.random_range(2i64..=4);
        let window = path.map_values(|u| u.project_band(lo as f64, hi as f64));
        let lhs = vp_norm(&window, 2.0)?.value.powi(2);
        let mut rhs = 0.0;
        for k in lo..hi {
            rhs += vp_norm(&path.map_values(|u| u.project_block(k)), 2.0)?.value.powi(2);
        }
        square_gap = square_gap.max(lhs - rhs);
    }

    let mut duality_margin = f64::MIN;
    for _ in 0..50 {
        let atoms = rng.random_range(1..=3);
        let mut terms = Vec::with_capacity(atoms);
        let mut lattice: Vec<f64> = Vec::new();
        for _ in 0..atoms {
            let count = rng.random_range(4..=6);
            let mut picks: Vec<usize> = (0..count).map(|_| rng.random_range(0..64)).collect();
            picks.sort_unstable();
            picks.dedup();
            while picks.len() < 3 {
                picks.push(picks.last().unwrap() + 1);
            }
            let times: Vec<f64> = picks.iter().map(|&k| k as f64 / 64.0).collect();
            let pieces: Vec<SpectralField> =
                (1..times.len()).map(|_| random_field(grid, &mut rng)).collect();
            lattice.extend_from_slice(&times);
            let atom = StepPath::new(times, pieces)?.into_unit_atom(2.0)?;
            let lam = Complex64::from_polar(
                rng.random_range(0.1..1.0),
                rng.random_range(0.0..std::f64::consts::TAU),
            );
            terms.push((lam, atom));
        }
        lattice.sort_by(|a, b| a.partial_cmp(b).unwrap());
        lattice.dedup();
        let decomp = AtomicDecomposition { p: 2.0, terms };
        let u = decomp.sample_on(&lattice, false)?;
        let upper = up_upper_bound(&decomp)?;
        let v = TimeSampledPath::new(
            lattice.clone(),
            (0..lattice.len()).map(|_| random_field(grid, &mut rng)).collect(),
            false,
        )?;
        let vnorm = vp_norm(&v, 2.0)?.value;
        let chain: Vec<usize> = (0..lattice.len()).collect();
        let pairing = duality_pairing(&u, &v, &chain)?.norm();
        duality_margin = duality_margin.max(pairing - upper * vnorm * (1.0 + DUALITY_SLACK));
    }

    let passed =
        chain_err <= CHAIN_MATCH_TOL && square_gap <= SQUARE_SUM_SLACK && duality_margin <= 0.0;
    Ok((
        passed,
        format!(
            "chain DP vs brute force {chain_err:.1e} over 100 draws; block square-sum slack \
             {square_gap:.1e}; duality margin {duality_margin:.1e} (all must be <= 0 or tol)"
        ),
    ))
}

// --------------------------------------------------------------------------
// 9. Sequence-space laws: Luxemburg axioms, the conjugate-pair product
//    bound, both calibrated conjugate-profile comparisons, and the
//    block-averaging contraction.
// --------------------------------------------------------------------------
fn orlicz_asymptotics(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let phi = lab_young(3.0)?;

    let mut axiom_err = 0.0f64;
    for _ in 0..100 {
        let len = rng.random_range(1..=32);
        let a: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..2.0)).collect();
        let b: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..2.0)).collect();
        let na = luxemburg_norm(&phi, &a)?;
        let nb = luxemburg_norm(&phi, &b)?;
        let scaled: Vec<f64> = a.iter().map(|x| 3.7 * x).collect();
        axiom_err = axiom_err.max(rel_err(luxemburg_norm(&phi, &scaled)?, 3.7 * na));
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let excess = luxemburg_norm(&phi, &sum)? - (na + nb);
        axiom_err = axiom_err.max(excess / (na + nb).max(1e-300));
    }

    let table = ConjugateTable::new(&phi);
    let mut holder_ratio = 0.0f64;
    for _ in 0..100 {
        let len = rng.random_range(4..=16);
        let a: Vec<f64> = (0..len).map(|_| rng.random_range(0.01..1.0)).collect();
        let b: Vec<f64> = (0..len).map(|_| rng.random_range(0.01..1.0)).collect();
        let lhs: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let rhs = luxemburg_norm(&phi, &a)? * conjugate_luxemburg_norm(&table, &b)?;
        holder_ratio = holder_ratio.max(lhs / rhs.max(1e-300));
    }

    let sqrt_profile = YoungFunction::sqrt_variant(2.0, SQRT_PROFILE_CORRECTION)?;
    let sqrt_table = ConjugateTable::new(&sqrt_profile);
    let mut comparison_lo = f64::MAX;
    let mut comparison_hi = f64::MIN;
    for k in 0..=28 {
        let t = 10f64.powf(-10.0 + 7.0 * k as f64 / 28.0);
        let ratio = sqrt_table.eval(t)? * (1.0 / t).ln().powi(4) / t;
        comparison_lo = comparison_lo.min(ratio);
        comparison_hi = comparison_hi.max(ratio);
    }

    let quartic = YoungFunction::quartic_variant(3.0, QUARTIC_PROFILE_CORRECTION)?;
    let mut indicator_max = 0.0f64;
    let mut monotone = true;
    let mut previous = 0.0f64;
    for exp in [4u32, 6, 8, 10, 12] {
        let n = 1usize << exp;
        let norm = indicator_conjugate_norm(&quartic, n)?;
        monotone &= norm >= previous * (1.0 - 1e-12);
        previous = norm;
        let ratio = norm * (n as f64).ln().powi(12) / n as f64;
        if !ratio.is_finite() || ratio <= 0.0 {
            monotone = false;
        }
        indicator_max = indicator_max.max(ratio);
    }

    let mut contraction = 0.0f64;
    for _ in 0..100 {
        let len = rng.random_range(4..=64);
        let vals: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..2.0)).collect();
        let j = rng.random_range(0..=4);
        let averaged = block_l2_average(&vals, j)?;
        contraction = contraction
            .max(luxemburg_norm(&phi, &averaged)? / luxemburg_norm(&phi, &vals)?.max(1e-300));
    }

    let passed = axiom_err <= NORM_AXIOM_TOL
        && holder_ratio <= HOLDER_CONSTANT * (1.0 + 1e-9)
        && comparison_lo >= CONJUGATE_COMPARISON_BAND.0
        && comparison_hi <= CONJUGATE_COMPARISON_BAND.1
        && monotone
        && indicator_max <= INDICATOR_RATIO_CAP
        && contraction <= AVERAGING_CONTRACTION_CAP;
    Ok((
        passed,
        format!(
            "axioms {axiom_err:.1e}; product bound {holder_ratio:.3} (cap 2); conjugate \
             comparison [{comparison_lo:.2e}, {comparison_hi:.2e}] in [{:.0e}, {:.0e}]; \
             indicator ratio max {indicator_max:.1} (cap {INDICATOR_RATIO_CAP}); averaging \
             contraction {contraction:.9}",
            CONJUGATE_COMPARISON_BAND.0, CONJUGATE_COMPARISON_BAND.1
        ),
    ))
}

// --------------------------------------------------------------------------
// 10. Weighted-norm dilation law bounded by (ln lambda)^gamma, with the
//     doubly exponential sharpness ratio of order one.
// --------------------------------------------------------------------------
fn dilation_law(seed: u64) -> Result<(bool, String)> {
    let grid = FrequencyGrid::new(512, 8)?;
    let u0 = generate_data(&DataFamily::LogDecay { gamma: 3.0 }, grid, seed)?;
    let e = std::f64::consts::E;
    let report = verify_scaling_law(&u0, 3.0, &[e, e * e, e.powi(4), e.powi(8)])?;
    let attained = report.ratios().iter().cloned().fold(f64::MIN, f64::max);
    let sharp = sharpness_log_ratio(2.0, 8.0)?;
    let passed = report.verdict.passed() && sharp >= SHARPNESS_BAND.0 && sharp <= SHARPNESS_BAND.1;
    Ok((
        passed,
        format!(
            "dilation ratios bounded, max {attained:.3} (band [0.25, 4]); doubly exponential \
             sharpness ratio {sharp:.4} (band [{}, {}])",
            SHARPNESS_BAND.0, SHARPNESS_BAND.1
        ),
    ))
}

// --------------------------------------------------------------------------
// 11. Small-data fixed-point iteration contracts, its limit matches the
//     split-step trajectory, and the block-Orlicz size persists.
// --------------------------------------------------------------------------
fn picard_contraction(seed: u64) -> Result<(bool, String)> {
    let grid = FrequencyGrid::new(1024, 8)?;
    let raw = generate_data(&DataFamily::Gaussian { width: 4.0 }, grid, seed)?;
    let u0 = raw.scale(Complex64::new(SMALL_DATA_SIZE / modulation_norm(&raw, 4.0)?, 0.0));
    let cfg = EvolutionConfig::new(1.0, 1000)?.with_nonlinearity(Nonlinearity::Defocusing);

    let outcome = picard_iterate(&u0, &cfg, PICARD_ITERS, &PicardMonitor::Modulation { p: 4.0 })?;
    let ratios = &outcome.report.ratios;
    let contracting = !outcome.report.diverged
        && ratios.len() >= 3
        && ratios[1..].iter().all(|r| *r < 1.0);
    let worst_ratio = ratios[1..].iter().cloned().fold(f64::MIN, f64::max);

    let reference = splitstep_evolve(&u0, &cfg)?;
    let mut mismatch = 0.0f64;
    for k in 0..reference.len() {
        let diff = outcome.final_iterate.frame(k).sub(reference.frame(k))?;
        mismatch = mismatch.max(modulation_norm(&diff, 4.0)?);
    }

    let phi_data = {
        let phi = lab_young(3.0)?;
        let size = crate::orlicz::modulation_orlicz_norm(&phi, &raw)?;
        raw.scale(Complex64::new(0.05 / size, 0.0))
    };
    let persistence = verify_norm_persistence(
        &phi_data,
        3.0,
        &EvolutionConfig::new(1.0, 1000)?
            .with_stride(100)
            .with_nonlinearity(Nonlinearity::Defocusing),
    )?;
    let sup_ratio = persistence.ratios().iter().cloned().fold(f64::MIN, f64::max);

    let passed = contracting && mismatch <= FIXED_POINT_TOL && persistence.verdict.passed();
    Ok((
        passed,
        format!(
            "contraction ratios < 1 from the second difference on (worst {worst_ratio:.3}); \
             fixed point vs split step {mismatch:.1e} (tol {FIXED_POINT_TOL:.0e}); size \
             persistence sup ratio {sup_ratio:.3} (cap 4)"
        ),
    ))
}
