//! Randomized structural properties: identities that must hold for every
//! input, not just the tuned instances in the unit tests. Case counts are
//! kept small because each case runs FFTs or bisections.

use num_complex::Complex64;
use proptest::prelude::*;

use nlslab_core::lab::lab_young;
use nlslab_core::norms::{lebesgue_norm, modulation_norm};
use nlslab_core::orlicz::{block_l2_average, luxemburg_norm};
use nlslab_core::variation::{vp_norm, vp_norm_bruteforce, TimeSampledPath};
use nlslab_core::{FrequencyGrid, SpectralField};

/// Interleaved re/im pairs -> a field on the 8-mode unit torus.
fn small_field(parts: &[(f64, f64)]) -> SpectralField {
    let grid = FrequencyGrid::new(8, 1).unwrap();
    let coeffs: Vec<Complex64> =
        parts.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
    SpectralField::from_coeffs(grid, coeffs).unwrap()
}

fn coeff_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plancherel_holds_for_every_field(parts in coeff_strategy()) {
        let u = small_field(&parts);
        let physical = lebesgue_norm(&u, 2.0).unwrap();
        prop_assert!((physical - u.l2_norm()).abs() <= 1e-12 * u.l2_norm().max(1.0));
    }

    #[test]
    fn free_evolution_is_unitary(parts in coeff_strategy(), t in -5.0..5.0f64) {
        let u = small_field(&parts);
        let evolved = u.free_evolve(t);
        prop_assert!((evolved.l2_norm() - u.l2_norm()).abs() <= 1e-12 * u.l2_norm().max(1.0));
    }

    #[test]
    fn modulation_norms_decrease_in_the_outer_exponent(parts in coeff_strategy()) {
        let u = small_field(&parts);
        let m2 = modulation_norm(&u, 2.0).unwrap();
        let m4 = modulation_norm(&u, 4.0).unwrap();
        let m8 = modulation_norm(&u, 8.0).unwrap();
        prop_assert!(m4 <= m2 * (1.0 + 1e-12));
        prop_assert!(m8 <= m4 * (1.0 + 1e-12));
    }

    #[test]
    fn luxemburg_norm_is_absolutely_homogeneous(
        values in prop::collection::vec(0.0..3.0f64, 1..12),
        scale in 0.01..20.0f64,
    ) {
        let phi = lab_young(3.0).unwrap();
        let base = luxemburg_norm(&phi, &values).unwrap();
        let scaled: Vec<f64> = values.iter().map(|v| v * scale).collect();
        let measured = luxemburg_norm(&phi, &scaled).unwrap();
        prop_assert!((measured - scale * base).abs() <= 1e-8 * (scale * base).max(1e-12));
    }

    #[test]
    fn luxemburg_norm_satisfies_the_triangle_inequality(
        a in prop::collection::vec(0.0..3.0f64, 6),
        b in prop::collection::vec(0.0..3.0f64, 6),
    ) {
        let phi = lab_young(3.0).unwrap();
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = luxemburg_norm(&phi, &sum).unwrap();
        let rhs = luxemburg_norm(&phi, &a).unwrap() + luxemburg_norm(&phi, &b).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-9));
    }

    #[test]
    fn block_averaging_never_increases_the_luxemburg_norm(
        values in prop::collection::vec(0.0..2.0f64, 4..32),
        j in 0u32..4,
    ) {
        let phi = lab_young(3.0).unwrap();
        let averaged = block_l2_average(&values, j).unwrap();
        let before = luxemburg_norm(&phi, &values).unwrap();
        let after = luxemburg_norm(&phi, &averaged).unwrap();
        prop_assert!(after <= before * (1.0 + 1e-9));
    }

    #[test]
    fn variation_dynamic_program_matches_brute_force(
        frames in prop::collection::vec(coeff_strategy(), 3..8),
        p in 1.0..4.0f64,
    ) {
        let times: Vec<f64> = (0..frames.len()).map(|k| k as f64 * 0.1).collect();
        let values: Vec<SpectralField> = frames.iter().map(|f| small_field(f)).collect();
        let path = TimeSampledPath::new(times, values, false).unwrap();
        let dp = vp_norm(&path, p).unwrap().value;
        let brute = vp_norm_bruteforce(&path, p).unwrap();
        prop_assert!((dp - brute).abs() <= 1e-12 * brute.max(1.0));
    }
}
