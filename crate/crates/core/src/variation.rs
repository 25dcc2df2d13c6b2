//! p-variation machinery on time-sampled, L²-valued paths: exact V^p
//! norms over the sampled partition lattice (dynamic programming),
//! atomic upper bounds for U^p, the bilinear duality pairing, and the
//! Schroedinger-twisted ("adapted") path construction.

use crate::error::{Error, Result};
use crate::grid::SpectralField;
use crate::spacetime::SpaceTimeField;
use num_complex::Complex64;

/// An L²-valued path known at finitely many increasing times. When
/// `tail_to_zero` is set the path is treated as vanishing at `+infinity`,
/// which appends one terminal increment `||v(t_j)||` to every chain.
#[derive(Clone, Debug)]
pub struct TimeSampledPath {
    times: Vec<f64>,
    values: Vec<SpectralField>,
    tail_to_zero: bool,
}

impl TimeSampledPath {
    pub fn new(times: Vec<f64>, values: Vec<SpectralField>, tail_to_zero: bool) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::GridMismatch(format!(
                "{} times vs {} values",
                times.len(),
                values.len()
            )));
        }
        if times.is_empty() {
            return Err(Error::InvalidParameter("empty path".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("times must be strictly increasing".into()));
        }
        let g = values[0].grid();
        if values.iter().any(|v| v.grid() != g) {
            return Err(Error::GridMismatch("path values on mixed grids".into()));
        }
        Ok(Self { times, values, tail_to_zero })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one sample
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn value(&self, k: usize) -> &SpectralField {
        &self.values[k]
    }

    pub fn values(&self) -> &[SpectralField] {
        &self.values
    }

    pub fn tail_to_zero(&self) -> bool {
        self.tail_to_zero
    }

    pub fn with_tail(mut self, tail: bool) -> Self {
        self.tail_to_zero = tail;
        self
    }

    pub fn map_values(&self, f: impl FnMut(&SpectralField) -> SpectralField) -> Self {
        Self {
            times: self.times.clone(),
            values: self.values.iter().map(f).collect(),
            tail_to_zero: self.tail_to_zero,
        }
    }

    /// Keep only the samples at `indices` (strictly increasing).
    pub fn subsample(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() || indices.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("indices must be nonempty and increasing".into()));
        }
        if *indices.last().unwrap() >= self.len() {
            return Err(Error::InvalidParameter("subsample index out of range".into()));
        }
        Ok(Self {
            times: indices.iter().map(|&i| self.times[i]).collect(),
            values: indices.iter().map(|&i| self.values[i].clone()).collect(),
            tail_to_zero: self.tail_to_zero,
        })
    }
}

/// Pairwise squared distances `||v_i - v_j||²`, one `O(N)` reduction per
/// pair up front so the DP afterwards is pure scalar work. Distances are
/// accumulated from coefficient differences directly: the Gram-identity
/// shortcut `E_i + E_j - 2 Re<v_i, v_j>` loses all significance when two
/// samples nearly coincide (free-flow paths do exactly that).
struct DistanceCache {
    m: usize,
    energy: Vec<f64>,
    dist_sq: Vec<f64>,
}

impl DistanceCache {
    fn new(values: &[SpectralField]) -> Self {
        let m = values.len();
        let energy: Vec<f64> = values.iter().map(|v| v.l2_norm().powi(2)).collect();
        let dxi = values[0].grid().dxi();
        let mut dist_sq = vec![0.0; m * m];
        for i in 0..m {
            for j in i + 1..m {
                let d: f64 = values[i]
                    .coeffs()
                    .iter()
                    .zip(values[j].coeffs())
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    * dxi;
                dist_sq[i * m + j] = d;
                dist_sq[j * m + i] = d;
            }
        }
        Self { m, energy, dist_sq }
    }

    fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist_sq[i * self.m + j].sqrt()
    }

    /// Distance to the zero element (for the terminal tail increment).
    fn tail(&self, j: usize) -> f64 {
        self.energy[j].sqrt()
    }
}

#[derive(Clone, Debug)]
pub struct VpNorm {
    pub value: f64,
    /// Sample indices of a maximizing chain, in increasing order.
    pub partition: Vec<usize>,
}

/// Exact V^p norm of the sampled path: the supremum of
/// `(Sum_k ||v(t_k) - v(t_{k-1})||^p)^{1/p}` over all chains from the
/// sample lattice, by dynamic programming in `O(M²)`. A single-sample
/// path has variation zero by convention.
pub fn vp_norm(path: &TimeSampledPath, p: f64) -> Result<VpNorm> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("p must lie in [1, inf), got {p}")));
    }
    let m = path.len();
    if m == 1 {
        let value = if path.tail_to_zero { path.value(0).l2_norm() } else { 0.0 };
        return Ok(VpNorm { value, partition: vec![0] });
    }
    let cache = DistanceCache::new(path.values());
    let mut best = vec![0.0_f64; m];
    let mut back: Vec<Option<usize>> = vec![None; m];
    for j in 1..m {
        for i in 0..j {
            let cand = best[i] + cache.dist(i, j).powf(p);
            if cand > best[j] {
                best[j] = cand;
                back[j] = Some(i);
            }
        }
    }
    let (mut arg, mut top) = (m - 1, best[m - 1]);
    if path.tail_to_zero {
        top = f64::NEG_INFINITY;
        for j in 0..m {
            let cand = best[j] + cache.tail(j).powf(p);
            if cand > top {
                top = cand;
                arg = j;
            }
        }
    } else {
        // appending a later sample never hurts, so best is non-decreasing
        // along maximal chains; still scan for safety against exact ties
        for (j, &b) in best.iter().enumerate() {
            if b > top {
                top = b;
                arg = j;
            }
        }
    }
    let mut partition = vec![arg];
    let mut cur = arg;
    while let Some(prev) = back[cur] {
        partition.push(prev);
        cur = prev;
    }
    if *partition.last().unwrap() != 0 {
        partition.push(0);
    }
    partition.reverse();
    Ok(VpNorm { value: top.max(0.0).powf(1.0 / p), partition })
}

/// Exhaustive maximum over all `2^(M-1)` chains anchored at sample 0
/// (prepending the first sample never decreases a chain's sum, so the
/// anchored family attains the global supremum). Only for `M <= 15`.
pub fn vp_norm_bruteforce(path: &TimeSampledPath, p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("p must lie in [1, inf), got {p}")));
    }
    let m = path.len();
    if m > 15 {
        return Err(Error::InvalidParameter(format!("brute force capped at 15 samples, got {m}")));
    }
    if m == 1 {
        return Ok(if path.tail_to_zero { path.value(0).l2_norm() } else { 0.0 });
    }
    let cache = DistanceCache::new(path.values());
    let mut top = 0.0_f64;
    for mask in 0..(1u32 << (m - 1)) {
        let mut chain = vec![0usize];
        for b in 0..m - 1 {
            if mask & (1 << b) != 0 {
                chain.push(b + 1);
            }
        }
        let mut sum = 0.0;
        for w in chain.windows(2) {
            sum += cache.dist(w[0], w[1]).powf(p);
        }
        if path.tail_to_zero {
            sum += cache.tail(*chain.last().unwrap()).powf(p);
        }
        top = top.max(sum);
    }
    Ok(top.powf(1.0 / p))
}

/// Right-continuous step function: value `pieces[k]` on
/// `[times[k], times[k+1])`, zero before `times[0]` and from the last
/// partition point on.
#[derive(Clone, Debug)]
pub struct StepPath {
    times: Vec<f64>,
    pieces: Vec<SpectralField>,
}

impl StepPath {
    pub fn new(times: Vec<f64>, pieces: Vec<SpectralField>) -> Result<Self> {
        if times.len() != pieces.len() + 1 {
            return Err(Error::InvalidParameter(format!(
                "{} partition points need {} pieces, got {}",
                times.len(),
                times.len() - 1,
                pieces.len()
            )));
        }
        if pieces.is_empty() {
            return Err(Error::InvalidParameter("step path needs at least one piece".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("partition points must be strictly increasing".into()));
        }
        let g = pieces[0].grid();
        if pieces.iter().any(|v| v.grid() != g) {
            return Err(Error::GridMismatch("step pieces on mixed grids".into()));
        }
        Ok(Self { times, pieces })
    }

    /// Scale the pieces after the leading one so that
    /// `Sum_{k>=1} ||phi_k||^p = 1`, and zero out the leading piece.
    pub fn into_unit_atom(mut self, p: f64) -> Result<Self> {
        let g = self.pieces[0].grid();
        self.pieces[0] = SpectralField::zero(g);
        let total: f64 = self.pieces[1..].iter().map(|v| v.l2_norm().powf(p)).sum();
        if total <= 0.0 {
            return Err(Error::InvalidParameter("atom has no mass beyond the leading zero piece".into()));
        }
        let s = total.powf(-1.0 / p);
        for piece in &mut self.pieces[1..] {
            *piece = piece.scale(Complex64::new(s, 0.0));
        }
        Ok(self)
    }

    pub fn pieces(&self) -> &[SpectralField] {
        &self.pieces
    }

    pub fn partition_points(&self) -> &[f64] {
        &self.times
    }

    pub fn eval(&self, t: f64) -> SpectralField {
        let g = self.pieces[0].grid();
        if t < self.times[0] || t >= *self.times.last().unwrap() {
            return SpectralField::zero(g);
        }
        let k = match self.times.binary_search_by(|probe| probe.partial_cmp(&t).unwrap()) {
            Ok(exact) => exact,
            Err(ins) => ins - 1,
        };
        self.pieces[k].clone()
    }

    /// Check the unit-atom normalization for exponent `p`: leading piece
    /// zero and `Sum ||phi_k||^p = 1` within `tol`.
    pub fn is_unit_atom(&self, p: f64, tol: f64) -> bool {
        let scale: f64 = self.pieces.iter().map(|v| v.l2_norm()).fold(0.0, f64::max);
        if self.pieces[0].l2_norm() > tol * scale.max(1e-300) {
            return false;
        }
        let total: f64 = self.pieces[1..].iter().map(|v| v.l2_norm().powf(p)).sum();
        (total - 1.0).abs() <= tol.max(1e-9)
    }
}

/// A finite combination `u = Sum_j lambda_j a_j` of unit atoms for a
/// common exponent `p`.
pub struct AtomicDecomposition {
    pub p: f64,
    pub terms: Vec<(Complex64, StepPath)>,
}

impl AtomicDecomposition {
    /// Evaluate the combination at the given sample times.
    pub fn sample_on(&self, times: &[f64], tail_to_zero: bool) -> Result<TimeSampledPath> {
        if self.terms.is_empty() {
            return Err(Error::InvalidParameter("empty decomposition".into()));
        }
        let g = self.terms[0].1.pieces[0].grid();
        let values: Vec<SpectralField> = times
            .iter()
            .map(|&t| {
                let mut acc = SpectralField::zero(g);
                for (lam, atom) in &self.terms {
                    acc = acc.add(&atom.eval(t).scale(*lam))?;
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        TimeSampledPath::new(times.to_vec(), values, tail_to_zero)
    }
}

/// `Sum_j |lambda_j|` — an upper bound for the atomic-decomposition
/// infimum norm, after validating every atom's normalization.
pub fn up_upper_bound(decomp: &AtomicDecomposition) -> Result<f64> {
    if !(decomp.p >= 1.0) || !decomp.p.is_finite() {
        return Err(Error::InvalidParameter(format!("p must lie in [1, inf), got {}", decomp.p)));
    }
    for (k, (_, atom)) in decomp.terms.iter().enumerate() {
        if !atom.is_unit_atom(decomp.p, 1e-9) {
            return Err(Error::InvalidParameter(format!(
                "atom {k} violates the unit normalization (leading piece zero, unit p-sum)"
            )));
        }
    }
    Ok(decomp.terms.iter().map(|(lam, _)| lam.norm()).sum())
}

/// The bilinear pairing `Sum_k <u(t_{k-1}), v(t_k) - v(t_{k-1})>` over the
/// chain `partition` (indices into the common sample grid). Probing with
/// unit-variation `v` yields lower bounds dual to the atomic upper bound.
pub fn duality_pairing(
    u: &TimeSampledPath,
    v: &TimeSampledPath,
    partition: &[usize],
) -> Result<Complex64> {
    if u.times.len() != v.times.len()
        || u.times.iter().zip(&v.times).any(|(a, b)| (a - b).abs() > 1e-12 * a.abs().max(1.0))
    {
        return Err(Error::GridMismatch(
            "duality pairing needs both paths on a common time grid".into(),
        ));
    }
    if partition.len() < 2 {
        return Ok(Complex64::ZERO);
    }
    if partition.windows(2).any(|w| w[1] <= w[0]) || *partition.last().unwrap() >= u.len() {
        return Err(Error::InvalidParameter("partition indices must be increasing and in range".into()));
    }
    let mut acc = Complex64::ZERO;
    for w in partition.windows(2) {
        let dv = v.value(w[1]).sub(v.value(w[0]))?;
        acc += u.value(w[0]).inner(&dv)?;
    }
    Ok(acc)
}

/// Undo the free flow frame by frame (`coeff *= e^{+i t xi²}`), turning a
/// trajectory into the path whose variation defines the adapted norms:
/// free evolutions become constant paths.
pub fn adapted_path(field: &SpaceTimeField, tail_to_zero: bool) -> TimeSampledPath {
    let times: Vec<f64> = (0..field.len()).map(|k| field.time(k)).collect();
    let values: Vec<SpectralField> =
        (0..field.len()).map(|k| field.frame(k).free_evolve(-field.time(k))).collect();
    TimeSampledPath { times, values, tail_to_zero }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::FrequencyGrid;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn grid() -> FrequencyGrid {
        FrequencyGrid::new(16, 2).unwrap()
    }

    fn unit_field(g: FrequencyGrid) -> SpectralField {
        SpectralField::from_profile(g, |xi| {
            if xi == 0.0 {
                Complex64::new(1.0 / g.dxi().sqrt(), 0.0)
            } else {
                Complex64::ZERO
            }
        })
    }

    fn random_field(g: FrequencyGrid, rng: &mut StdRng) -> SpectralField {
        SpectralField::from_profile(g, |_| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn random_path(g: FrequencyGrid, m: usize, rng: &mut StdRng, tail: bool) -> TimeSampledPath {
        let times: Vec<f64> = (0..m).map(|k| k as f64 + rng.random_range(0.0..0.5)).collect();
        let values = (0..m).map(|_| random_field(g, rng)).collect();
        TimeSampledPath::new(times, values, tail).unwrap()
    }

    #[test]
    fn constant_path_variation() {
        let g = grid();
        let e = unit_field(g);
        let times = vec![0.0, 1.0, 2.0, 3.0];
        let values = vec![e.clone(), e.clone(), e.clone(), e.clone()];
        let path = TimeSampledPath::new(times, values, false).unwrap();
        assert_eq!(vp_norm(&path, 2.0).unwrap().value, 0.0);
        // with the vanishing tail the single terminal jump carries ||e|| = 1
        let tailed = path.with_tail(true);
        let v = vp_norm(&tailed, 2.0).unwrap().value;
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_ramp_takes_single_coarse_jump() {
        let g = grid();
        let e = unit_field(g);
        let m = 7;
        let values: Vec<SpectralField> =
            (0..=m).map(|k| e.scale(Complex64::new(k as f64, 0.0))).collect();
        let times: Vec<f64> = (0..=m).map(|k| 0.3 * k as f64).collect();
        let path = TimeSampledPath::new(times, values, false).unwrap();
        let got = vp_norm(&path, 2.0).unwrap();
        assert!((got.value - m as f64).abs() < 1e-10);
        assert_eq!(got.partition, vec![0, m as usize]);
    }

    #[test]
    fn two_point_path_any_exponent() {
        let g = grid();
        let mut rng = StdRng::seed_from_u64(7);
        let a = random_field(g, &mut rng);
        let b = random_field(g, &mut rng);
        let d = b.sub(&a).unwrap().l2_norm();
        let path = TimeSampledPath::new(vec![0.0, 1.0], vec![a, b], false).unwrap();
        for p in [1.0, 2.0, 3.5] {
            assert!((vp_norm(&path, p).unwrap().value - d).abs() < 1e-12 * d);
        }
    }

    #[test]
    fn dp_matches_bruteforce() {
        let g = grid();
        let mut rng = StdRng::seed_from_u64(0x5EED);
        for trial in 0..100 {
            let m = [4, 8, 12][trial % 3];
            let tail = trial % 2 == 0;
            let path = random_path(g, m, &mut rng, tail);
            for p in [1.0, 2.0, 3.0] {
                let dp = vp_norm(&path, p).unwrap().value;
                let bf = vp_norm_bruteforce(&path, p).unwrap();
                assert!(
                    (dp - bf).abs() <= 1e-10 * bf.max(1e-12),
                    "trial {trial} m={m} p={p}: dp={dp} bf={bf}"
                );
            }
        }
    }

    #[test]
    fn dp_partition_attains_value() {
        let g = grid();
        let mut rng = StdRng::seed_from_u64(99);
        let path = random_path(g, 10, &mut rng, false);
        let out = vp_norm(&path, 2.0).unwrap();
        let mut sum = 0.0;
        for w in out.partition.windows(2) {
            sum += path.value(w[1]).sub(path.value(w[0])).unwrap().l2_norm().powi(2);
        }
        assert!((sum.sqrt() - out.value).abs() < 1e-10 * out.value);
    }

    #[test]
    fn variation_non_increasing_in_p() {
        let g = grid();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10 {
            let path = random_path(g, 9, &mut rng, false);
            let mut prev = f64::INFINITY;
            for p in [1.0, 1.5, 2.0, 3.0, 5.0] {
                let v = vp_norm(&path, p).unwrap().value;
                assert!(v <= prev * (1.0 + 1e-12), "p={p}: {v} > {prev}");
                prev = v;
            }
        }
    }

    #[test]
    fn refinement_never_decreases_variation() {
        let g = grid();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..10 {
            let path = random_path(g, 12, &mut rng, false);
            let coarse = path.subsample(&[0, 2, 4, 6, 8, 10]).unwrap();
            let fine = vp_norm(&path, 2.0).unwrap().value;
            let sub = vp_norm(&coarse, 2.0).unwrap().value;
            assert!(sub <= fine * (1.0 + 1e-12));
        }
    }

    #[test]
    fn atom_normalization_and_upper_bound() {
        let g = grid();
        let mut rng = StdRng::seed_from_u64(31);
        let times = vec![0.0, 1.0, 2.0, 3.0];
        let pieces = vec![
            random_field(g, &mut rng),
            random_field(g, &mut rng),
            random_field(g, &mut rng),
        ];
        let atom = StepPath::new(times, pieces).unwrap().into_unit_atom(2.0).unwrap();
        assert!(atom.is_unit_atom(2.0, 1e-9));
        let decomp = AtomicDecomposition {
            p: 2.0,
            terms: vec![(Complex64::new(0.0, 1.0), atom.clone())],
        };
        assert!((up_upper_bound(&decomp).unwrap() - 1.0).abs() < 1e-12);

        // a non-normalized atom is rejected
        let bad = AtomicDecomposition {
            p: 2.0,
            terms: vec![(
                Complex64::ONE,
                StepPath::new(vec![0.0, 1.0, 2.0], vec![
                    SpectralField::zero(g),
                    unit_field(g).scale(Complex64::new(3.0, 0.0)),
                ])
                .unwrap(),
            )],
        };
        assert!(up_upper_bound(&bad).is_err());
    }

    #[test]
    fn atom_variation_bounded_by_twice_weight() {
        // ||a||_{V^p} <= 2 for unit atoms (triangle inequality in l^p of
        // the step sequence), hence V^p(sum) <= 2 * Sum|lambda|
        let g = grid();
        let mut rng = StdRng::seed_from_u64(41);
        for p in [1.5, 2.0, 4.0] {
            for _ in 0..20 {
                let times = vec![0.0, 0.7, 1.1, 2.0, 2.9];
                let pieces = (0..4).map(|_| random_field(g, &mut rng)).collect();
                let atom = StepPath::new(times, pieces).unwrap().into_unit_atom(p).unwrap();
                let lam = Complex64::new(rng.random_range(0.1..3.0), rng.random_range(-1.0..1.0));
                let decomp = AtomicDecomposition { p, terms: vec![(lam, atom)] };
                let bound = up_upper_bound(&decomp).unwrap();
                let sample_times: Vec<f64> = (0..30).map(|k| k as f64 * 0.1).collect();
                let path = decomp.sample_on(&sample_times, true).unwrap();
                let v = vp_norm(&path, p).unwrap().value;
                assert!(v <= 2.0 * bound * (1.0 + 1e-9), "p={p}: V^p {v} vs bound {bound}");
            }
        }
    }

    #[test]
    fn pairing_with_constant_probe_vanishes() {
        let g = grid();
        let mut rng = StdRng::seed_from_u64(53);
        let u = random_path(g, 6, &mut rng, false);
        let e = unit_field(g);
        let v = TimeSampledPath::new(
            u.times().to_vec(),
            vec![e.clone(), e.clone(), e.clone(), e.clone(), e.clone(), e],
            false,
        )
        .unwrap();
        let b = duality_pairing(&u, &v, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(b.norm() < 1e-12);
    }

    #[test]
    fn single_atom_self_pairing_hand_expansion() {
        // u = v sampled from phi * chi_[t0, t1): samples (phi, 0, 0).
        // B = <phi, 0 - phi> + <0, 0 - 0> = -||phi||².
        let g = grid();
        let mut rng = StdRng::seed_from_u64(61);
        let phi = random_field(g, &mut rng);
        let z = SpectralField::zero(g);
        let samples = vec![phi.clone(), z.clone(), z];
        let u = TimeSampledPath::new(vec![0.0, 1.0, 2.0], samples, false).unwrap();
        let b = duality_pairing(&u, &u, &[0, 1, 2]).unwrap();
        let expect = -phi.l2_norm().powi(2);
        assert!((b.re - expect).abs() < 1e-12 * expect.abs());
        assert!(b.im.abs() < 1e-12 * expect.abs());
    }

    #[test]
    fn duality_lower_bound_stays_below_atomic_upper_bound() {
        let g = grid();
        let mut rng = StdRng::seed_from_u64(71);
        let sample_times: Vec<f64> = (0..12).map(|k| k as f64 * 0.25).collect();
        for _ in 0..5 {
            let n_atoms = rng.random_range(1..4);
            let mut terms = Vec::new();
            for _ in 0..n_atoms {
                let pieces = (0..3).map(|_| random_field(g, &mut rng)).collect();
                let atom = StepPath::new(vec![0.0, 0.9, 1.8, 2.7], pieces)
                    .unwrap()
                    .into_unit_atom(2.0)
                    .unwrap();
                terms.push((Complex64::new(rng.random_range(0.2..2.0), 0.0), atom));
            }
            let decomp = AtomicDecomposition { p: 2.0, terms };
            let upper = up_upper_bound(&decomp).unwrap();
            let u = decomp.sample_on(&sample_times, false).unwrap();
            let all: Vec<usize> = (0..u.len()).collect();
            let mut lower = 0.0_f64;
            for _ in 0..50 {
                let probe = random_path(g, u.len(), &mut rng, false);
                let probe = TimeSampledPath::new(
                    u.times().to_vec(),
                    probe.values().to_vec(),
                    false,
                )
                .unwrap();
                let vv = vp_norm(&probe, 2.0).unwrap().value;
                if vv <= 1e-12 {
                    continue;
                }
                let b = duality_pairing(&u, &probe, &all).unwrap();
                lower = lower.max(b.norm() / vv);
            }
            assert!(
                lower <= upper * (1.0 + 1e-9),
                "duality lower bound {lower} exceeded atomic upper bound {upper}"
            );
        }
    }

    #[test]
    fn pairing_rejects_mismatched_time_grids() {
        let g = grid();
        let mut rng = StdRng::seed_from_u64(83);
        let u = random_path(g, 4, &mut rng, false);
        let v = TimeSampledPath::new(
            vec![0.0, 10.0, 20.0, 30.0],
            u.values().to_vec(),
            false,
        )
        .unwrap();
        assert!(duality_pairing(&u, &v, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn adapted_path_of_free_flow_is_constant() {
        let g = FrequencyGrid::new(64, 4).unwrap();
        let u0 = SpectralField::from_profile(g, |xi| Complex64::new((-(xi * xi)).exp(), 0.0));
        let st = SpaceTimeField::sample(0.0, 0.05, 20, |t| u0.free_evolve(t)).unwrap();
        let path = adapted_path(&st, false);
        let v = vp_norm(&path, 2.0).unwrap().value;
        assert!(v < 1e-12, "adapted variation of a free wave: {v}");
    }

    #[test]
    fn block_projection_square_sum_inequality() {
        let g = FrequencyGrid::new(64, 4).unwrap();
        let mut rng = StdRng::seed_from_u64(97);
        for tail in [false, true] {
            let path = random_path(g, 10, &mut rng, tail);
            let whole = path.map_values(|v| v.project_band(-2.0, 3.0));
            let lhs = vp_norm(&whole, 2.0).unwrap().value.powi(2);
            let mut rhs = 0.0;
            for k in -2..3 {
                let block = path.map_values(|v| v.project_block(k));
                rhs += vp_norm(&block, 2.0).unwrap().value.powi(2);
            }
            assert!(lhs <= rhs + 1e-9, "tail={tail}: {lhs} vs {rhs}");
        }
    }
}
