//! Frequency grid and spectral fields on the torus R/(2*pi*m)Z.
//!
//! Transform convention (unitary, angular frequency):
//!
//! ```text
//!   uhat(xi_j) = (2*pi)^(-1/2) * Integral_0^L exp(-i*x*xi_j) u(x) dx
//!   u(x_i)     = (2*pi)^(-1/2) * dxi * Sum_j exp(+i*x_i*xi_j) uhat(xi_j)
//! ```
//!
//! with period `L = 2*pi*m`, mode spacing `dxi = 1/m` and modes
//! `xi_j = j/m` for `j in [-N/2, N/2)`. Spatial samples sit at
//! `x_i = i*L/N`. Under this pairing the exponential collapses to the
//! plain DFT kernel `exp(-2*pi*i*i*j/N)` and Plancherel is exact:
//!
//! ```text
//!   dx * Sum_i |u(x_i)|^2  =  dxi * Sum_j |uhat(xi_j)|^2
//! ```
//!
//! so physical-space quadrature norms and frequency-side sums agree with no
//! stray 2*pi. The price is a factor (2*pi)^(-1/2) against the raw analyst's
//! transform: the constant function 1 carries DC coefficient L/sqrt(2*pi)
//! and the Gaussian exp(-x^2/2) maps to exp(-xi^2/2).

use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

pub const SQRT_2PI: f64 = 2.506628274631000502415765284811;

/// Frequency lattice: `n` modes (power of two) at spacing `1/m`.
/// Every unit interval `[k, k+1)` holds exactly `m` modes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FrequencyGrid {
    n: usize,
    m: usize,
}

impl FrequencyGrid {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if !n.is_power_of_two() || n < 8 {
            return Err(Error::InvalidParameter(format!(
                "mode count must be a power of two >= 8, got {n}"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("modes per unit interval must be positive".into()));
        }
        if n / 2 < m {
            return Err(Error::InvalidParameter(format!(
                "grid covers frequencies up to {}; need at least one unit interval (m = {m})",
                n as f64 / (2.0 * m as f64)
            )));
        }
        Ok(FrequencyGrid { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Mode spacing in frequency.
    pub fn dxi(&self) -> f64 {
        1.0 / self.m as f64
    }

    /// Spatial period `L = 2*pi*m`.
    pub fn period(&self) -> f64 {
        2.0 * PI * self.m as f64
    }

    /// Spatial sample spacing `L/N`.
    pub fn dx(&self) -> f64 {
        self.period() / self.n as f64
    }

    /// Largest represented frequency magnitude, `N/(2m)`.
    pub fn xi_max(&self) -> f64 {
        self.n as f64 * self.dxi() / 2.0
    }

    /// Frequency of signed mode index `j in [-N/2, N/2)`.
    pub fn xi(&self, j: i64) -> f64 {
        j as f64 / self.m as f64
    }

    /// Spatial coordinate of sample `i`.
    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx()
    }

    /// Signed mode index for storage slot `idx` (FFT layout).
    pub fn signed_index(&self, idx: usize) -> i64 {
        if idx < self.n / 2 {
            idx as i64
        } else {
            idx as i64 - self.n as i64
        }
    }

    /// Storage slot for signed mode index `j`; None when off-grid.
    pub fn slot(&self, j: i64) -> Option<usize> {
        let half = self.n as i64 / 2;
        if j >= -half && j < half {
            Some(if j >= 0 { j as usize } else { (j + self.n as i64) as usize })
        } else {
            None
        }
    }
}

thread_local! {
    static PLANS: RefCell<HashMap<(usize, bool), Arc<dyn Fft<f64>>>> = RefCell::new(HashMap::new());
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANS.with(|cell| {
        cell.borrow_mut()
            .entry((n, inverse))
            .or_insert_with(|| {
                let mut planner = FftPlanner::new();
                if inverse {
                    planner.plan_fft_inverse(n)
                } else {
                    planner.plan_fft_forward(n)
                }
            })
            .clone()
    })
}

/// Runs the unnormalized DFT `X_l = Sum_k exp(-+2*pi*i*k*l/n) x_k` in place.
pub(crate) fn dft_in_place(buf: &mut [Complex64], inverse: bool) {
    plan(buf.len(), inverse).process(buf);
}

/// A function on the torus stored as its frequency coefficients in FFT
/// layout (slot `idx` holds signed mode `idx` for `idx < N/2`, `idx - N`
/// otherwise). Values are immutable after construction; all operations
/// return fresh fields.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: FrequencyGrid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zero(grid: FrequencyGrid) -> Self {
        SpectralField { grid, coeffs: vec![Complex64::ZERO; grid.n()] }
    }

    /// Builds a field by sampling a closed-form coefficient profile at the
    /// grid modes.
    pub fn from_profile<F: FnMut(f64) -> Complex64>(grid: FrequencyGrid, mut profile: F) -> Self {
        let coeffs = (0..grid.n())
            .map(|idx| profile(grid.xi(grid.signed_index(idx))))
            .collect();
        SpectralField { grid, coeffs }
    }

    /// Takes ownership of a coefficient vector already in FFT layout.
    pub fn from_coeffs(grid: FrequencyGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n() {
            return Err(Error::GridMismatch(format!(
                "coefficient vector has {} entries, grid has {} modes",
                coeffs.len(),
                grid.n()
            )));
        }
        Ok(SpectralField { grid, coeffs })
    }

    /// Forward transform of physical samples `u(x_i)`, `i = 0..N`.
    pub fn from_physical(grid: FrequencyGrid, samples: &[Complex64]) -> Result<Self> {
        if samples.len() != grid.n() {
            return Err(Error::GridMismatch(format!(
                "{} samples for a grid of {} points",
                samples.len(),
                grid.n()
            )));
        }
        let mut buf = samples.to_vec();
        dft_in_place(&mut buf, false);
        let scale = grid.dx() / SQRT_2PI;
        for c in &mut buf {
            *c *= scale;
        }
        Ok(SpectralField { grid, coeffs: buf })
    }

    /// Inverse transform back to physical samples.
    pub fn to_physical(&self) -> Vec<Complex64> {
        let mut buf = self.coeffs.clone();
        dft_in_place(&mut buf, true);
        let scale = self.grid.dxi() / SQRT_2PI;
        for c in &mut buf {
            *c *= scale;
        }
        buf
    }

    pub fn grid(&self) -> FrequencyGrid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of signed mode `j`; zero off-grid.
    pub fn coeff(&self, j: i64) -> Complex64 {
        match self.grid.slot(j) {
            Some(idx) => self.coeffs[idx],
            None => Complex64::ZERO,
        }
    }

    /// Iterates `(signed index, frequency, coefficient)` in increasing
    /// frequency order.
    pub fn modes(&self) -> impl Iterator<Item = (i64, f64, Complex64)> + '_ {
        let half = self.grid.n() as i64 / 2;
        (-half..half).map(move |j| (j, self.grid.xi(j), self.coeff(j)))
    }

    pub fn map<F: FnMut(f64, Complex64) -> Complex64>(&self, mut f: F) -> Self {
        let coeffs = (0..self.grid.n())
            .map(|idx| f(self.grid.xi(self.grid.signed_index(idx)), self.coeffs[idx]))
            .collect();
        SpectralField { grid: self.grid, coeffs }
    }

    /// `dxi * Sum_j uhat_j * conj(vhat_j)`; equals the physical-space
    /// `L^2` pairing under the unitary convention.
    pub fn inner(&self, other: &SpectralField) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("inner product across different grids".into()));
        }
        let s: Complex64 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(s * self.grid.dxi())
    }

    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.coeffs.iter().map(|c| c.norm_sqr()).sum();
        (s * self.grid.dxi()).sqrt()
    }

    pub fn scale(&self, a: Complex64) -> Self {
        SpectralField { grid: self.grid, coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }

    pub fn add(&self, other: &SpectralField) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("adding fields on different grids".into()));
        }
        Ok(SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &SpectralField) -> Result<Self> {
        Ok(self.add(&other.scale(Complex64::new(-1.0, 0.0)))?)
    }

    /// Zeroes every coefficient with frequency outside the half-open band
    /// `[lo, hi)`.
    pub fn project_band(&self, lo: f64, hi: f64) -> Self {
        self.map(|xi, c| if xi >= lo && xi < hi { c } else { Complex64::ZERO })
    }

    /// Unit-interval frequency projection `P_k`, band `[k, k+1)`.
    pub fn project_block(&self, k: i64) -> Self {
        self.project_band(k as f64, k as f64 + 1.0)
    }

    /// High-pass `P_{|xi| > lambda}` (strict).
    pub fn project_above(&self, lambda: f64) -> Self {
        self.map(|xi, c| if xi.abs() > lambda { c } else { Complex64::ZERO })
    }

    /// Free Schroedinger propagator: multiplier `exp(-i*t*xi^2)`.
    pub fn free_evolve(&self, t: f64) -> Self {
        self.map(|xi, c| c * Complex64::from_polar(1.0, -t * xi * xi))
    }

    /// Shifts every mode up by `shift` lattice steps (frequency translation
    /// by `shift * dxi`). Modes pushed off-grid are dropped.
    pub fn shift_modes(&self, shift: i64) -> Self {
        let mut out = SpectralField::zero(self.grid);
        let half = self.grid.n() as i64 / 2;
        for j in -half..half {
            let src = j - shift;
            if src >= -half && src < half {
                let idx = self.grid.slot(j).unwrap();
                out.coeffs[idx] = self.coeff(src);
            }
        }
        out
    }

    /// Per-block `L^2` masses `(k, ||P_k u||_{L^2})` for every unit block
    /// `[k, k+1)` holding nonzero mass, in increasing `k`.
    pub fn unit_blocks(&self) -> Vec<(i64, f64)> {
        let mut acc: Vec<(i64, f64)> = Vec::new();
        let m = self.grid.m() as i64;
        let half = self.grid.n() as i64 / 2;
        let mut j = -half;
        while j < half {
            let k = j.div_euclid(m);
            let upper = ((k + 1) * m).min(half);
            let mut s = 0.0;
            let mut jj = j;
            while jj < upper {
                s += self.coeff(jj).norm_sqr();
                jj += 1;
            }
            if s > 0.0 {
                acc.push((k, (s * self.grid.dxi()).sqrt()));
            }
            j = upper;
        }
        acc
    }

    /// Fraction of the squared `L^2` mass carried by modes with
    /// `|xi| <= cut`.
    pub fn mass_fraction_within(&self, cut: f64) -> f64 {
        let mut inside = 0.0;
        let mut total = 0.0;
        for (_, xi, c) in self.modes() {
            let w = c.norm_sqr();
            total += w;
            if xi.abs() <= cut {
                inside += w;
            }
        }
        if total == 0.0 {
            1.0
        } else {
            inside / total
        }
    }

    /// De-aliasing margin: fraction of squared mass inside
    /// `[-N*dxi/4, N*dxi/4]`.
    pub fn dealias_margin(&self) -> f64 {
        self.mass_fraction_within(self.grid.xi_max() / 2.0)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Columnar text serialization: comment header, then `j re im` per mode
    /// in increasing signed index.
    pub fn to_column_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# spectral-field v1\n");
        out.push_str(&format!("# N={} m={}\n", self.grid.n(), self.grid.m()));
        out.push_str("# columns: mode-index re im\n");
        for (j, _, c) in self.modes() {
            out.push_str(&format!("{} {:.17e} {:.17e}\n", j, c.re, c.im));
        }
        out
    }

    pub fn from_column_text(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut m: Option<usize> = None;
        let mut rows: Vec<(i64, Complex64)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                for tok in rest.split_whitespace() {
                    if let Some(v) = tok.strip_prefix("N=") {
                        n = Some(v.parse().map_err(|_| Error::Parse(format!("bad N in {tok}")))?);
                    }
                    if let Some(v) = tok.strip_prefix("m=") {
                        m = Some(v.parse().map_err(|_| Error::Parse(format!("bad m in {tok}")))?);
                    }
                }
                continue;
            }
            let mut it = line.split_whitespace();
            let j: i64 = it
                .next()
                .ok_or_else(|| Error::Parse("missing index".into()))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in line: {line}")))?;
            let re: f64 = it
                .next()
                .ok_or_else(|| Error::Parse("missing re".into()))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad re in line: {line}")))?;
            let im: f64 = it
                .next()
                .ok_or_else(|| Error::Parse("missing im".into()))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad im in line: {line}")))?;
            rows.push((j, Complex64::new(re, im)));
        }
        let grid = FrequencyGrid::new(
            n.ok_or_else(|| Error::Parse("header lacks N".into()))?,
            m.ok_or_else(|| Error::Parse("header lacks m".into()))?,
        )?;
        let mut field = SpectralField::zero(grid);
        for (j, c) in rows {
            let idx = grid
                .slot(j)
                .ok_or_else(|| Error::Parse(format!("mode index {j} off-grid")))?;
            field.coeffs[idx] = c;
        }
        Ok(field)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .modes()
            .map(|(j, _, c)| serde_json::json!([j, c.re, c.im]))
            .collect();
        serde_json::json!({
            "grid": { "N": self.grid.n(), "m": self.grid.m() },
            "coeffs": coeffs,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let n = v["grid"]["N"]
            .as_u64()
            .ok_or_else(|| Error::Parse("json lacks grid.N".into()))? as usize;
        let m = v["grid"]["m"]
            .as_u64()
            .ok_or_else(|| Error::Parse("json lacks grid.m".into()))? as usize;
        let grid = FrequencyGrid::new(n, m)?;
        let mut field = SpectralField::zero(grid);
        let arr = v["coeffs"].as_array().ok_or_else(|| Error::Parse("json lacks coeffs".into()))?;
        for row in arr {
            let j = row[0].as_i64().ok_or_else(|| Error::Parse("bad coeff index".into()))?;
            let re = row[1].as_f64().ok_or_else(|| Error::Parse("bad coeff re".into()))?;
            let im = row[2].as_f64().ok_or_else(|| Error::Parse("bad coeff im".into()))?;
            let idx = grid.slot(j).ok_or_else(|| Error::Parse(format!("mode {j} off-grid")))?;
            field.coeffs[idx] = Complex64::new(re, im);
        }
        Ok(field)
    }
}

/// Dyadic frequency interval `[3/4 * 2^j, 3/2 * 2^j)`. Consecutive
/// intervals tile edge to edge, covering `[3/4, infinity)` exactly once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicInterval {
    pub j: u32,
}

impl DyadicInterval {
    pub fn lo(&self) -> f64 {
        0.75 * (1u64 << self.j) as f64
    }

    pub fn hi(&self) -> f64 {
        1.5 * (1u64 << self.j) as f64
    }

    pub fn contains(&self, xi: f64) -> bool {
        xi >= self.lo() && xi < self.hi()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_field(grid: FrequencyGrid) -> SpectralField {
        let samples: Vec<Complex64> = (0..grid.n())
            .map(|i| {
                // center the bump to keep it smooth across the period seam
                let x = grid.x(i) - grid.period() / 2.0;
                Complex64::new((-x * x / 2.0).exp(), 0.0)
            })
            .collect();
        SpectralField::from_physical(grid, &samples).unwrap()
    }

    #[test]
    fn round_trip_is_identity() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut rnd = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let samples: Vec<Complex64> = (0..256).map(|_| Complex64::new(rnd(), rnd())).collect();
        let field = SpectralField::from_physical(grid, &samples).unwrap();
        let back = field.to_physical();
        let num: f64 = samples.iter().zip(&back).map(|(a, b)| (a - b).norm_sqr()).sum();
        let den: f64 = samples.iter().map(|a| a.norm_sqr()).sum();
        assert!((num / den).sqrt() < 1e-12);
    }

    #[test]
    fn plancherel_exact() {
        let grid = FrequencyGrid::new(512, 8).unwrap();
        let samples: Vec<Complex64> = (0..512)
            .map(|i| Complex64::new((grid.x(i) * 0.37).sin(), (grid.x(i) * 0.11).cos()))
            .collect();
        let field = SpectralField::from_physical(grid, &samples).unwrap();
        let phys: f64 = samples.iter().map(|c| c.norm_sqr()).sum::<f64>() * grid.dx();
        let freq = field.l2_norm().powi(2);
        assert!((phys - freq).abs() / phys < 1e-12);
    }

    #[test]
    fn constant_function_dc_coefficient() {
        // Under the unitary convention the constant 1 carries DC value
        // L / sqrt(2*pi) and nothing else.
        let grid = FrequencyGrid::new(128, 8).unwrap();
        let ones = vec![Complex64::ONE; 128];
        let field = SpectralField::from_physical(grid, &ones).unwrap();
        let expect = grid.period() / SQRT_2PI;
        assert!((field.coeff(0).re - expect).abs() / expect < 1e-12);
        assert!(field.coeff(0).im.abs() < 1e-10);
        for (j, _, c) in field.modes() {
            if j != 0 {
                assert!(c.norm() < 1e-10 * expect);
            }
        }
    }

    #[test]
    fn gaussian_matches_closed_form_pair() {
        // exp(-x^2/2) -> exp(-xi^2/2) under the unitary pair. The bump is
        // centered at L/2, contributing a phase exp(-i*xi*L/2) to each mode.
        let grid = FrequencyGrid::new(1024, 8).unwrap(); // L = 16*pi >= 16*pi
        let field = gaussian_field(grid);
        let shift = grid.period() / 2.0;
        let mut worst: f64 = 0.0;
        for (_, xi, c) in field.modes() {
            if xi.abs() > 8.0 {
                continue;
            }
            let expect = Complex64::from_polar((-xi * xi / 2.0).exp(), -xi * shift);
            worst = worst.max((c - expect).norm());
        }
        assert!(worst < 1e-8, "worst abs error {worst}");
    }

    #[test]
    fn projection_partition_and_idempotence() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let field = gaussian_field(grid);
        let a = field.project_band(-2.0, 1.0);
        let b = field.project_band(-2.0, 1.0).project_band(-2.0, 1.0);
        assert_eq!(a, b);
        // complementary bands partition the mass exactly
        let lowc = field.project_band(-1e9, 0.5);
        let high = field.map(|xi, c| if xi >= 0.5 { c } else { Complex64::ZERO });
        let total = lowc.l2_norm().powi(2) + high.l2_norm().powi(2);
        assert!((total - field.l2_norm().powi(2)).abs() <= 1e-12 * total);
    }

    #[test]
    fn boundary_mode_belongs_to_left_closed_block() {
        let grid = FrequencyGrid::new(64, 4).unwrap();
        let mut field = SpectralField::zero(grid);
        let idx = grid.slot(4).unwrap(); // xi = 1 exactly
        field.coeffs[idx] = Complex64::ONE;
        assert_eq!(field.project_block(1).l2_norm(), field.l2_norm());
        assert_eq!(field.project_block(0).l2_norm(), 0.0);
    }

    #[test]
    fn unit_blocks_partition_l2_mass() {
        let grid = FrequencyGrid::new(512, 8).unwrap();
        let field = gaussian_field(grid);
        let blocks = field.unit_blocks();
        let total: f64 = blocks.iter().map(|(_, b)| b * b).sum();
        let l2 = field.l2_norm().powi(2);
        assert!((total - l2).abs() <= 1e-12 * l2);
        for w in blocks.windows(2) {
            assert!(w[0].0 < w[1].0);
        }
    }

    #[test]
    fn unit_blocks_match_per_block_quadrature_oracle() {
        // Field sampled from a closed-form profile; oracle recomputes each
        // block mass by direct summation of the profile over that block.
        let grid = FrequencyGrid::new(512, 8).unwrap();
        let profile = |xi: f64| (-(xi * xi) / 3.0).exp();
        let field = SpectralField::from_profile(grid, |xi| Complex64::new(profile(xi), 0.0));
        for (k, mass) in field.unit_blocks() {
            let mut oracle = 0.0;
            for j in k * grid.m() as i64..(k + 1) * grid.m() as i64 {
                if grid.slot(j).is_some() {
                    let xi = grid.xi(j);
                    oracle += profile(xi) * profile(xi);
                }
            }
            let oracle = (oracle * grid.dxi()).sqrt();
            assert!((mass - oracle).abs() <= 1e-10 * oracle.max(1e-300));
        }
    }

    #[test]
    fn zero_field_has_no_blocks() {
        let grid = FrequencyGrid::new(64, 8).unwrap();
        assert!(SpectralField::zero(grid).unit_blocks().is_empty());
    }

    #[test]
    fn column_text_round_trip() {
        let grid = FrequencyGrid::new(64, 4).unwrap();
        let field = SpectralField::from_profile(grid, |xi| Complex64::new(xi.cos(), xi.sin() * 0.5));
        let text = field.to_column_text();
        let back = SpectralField::from_column_text(&text).unwrap();
        let err: f64 = field
            .coeffs()
            .iter()
            .zip(back.coeffs())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let grid = FrequencyGrid::new(32, 4).unwrap();
        let field = SpectralField::from_profile(grid, |xi| Complex64::new(1.0 / (1.0 + xi * xi), 0.3 * xi));
        let back = SpectralField::from_json(&field.to_json()).unwrap();
        assert_eq!(field, back);
    }

    #[test]
    fn dyadic_intervals_tile_without_gaps() {
        for j in 0..20u32 {
            let a = DyadicInterval { j };
            let b = DyadicInterval { j: j + 1 };
            assert_eq!(a.hi(), 2.0 * a.lo());
            assert_eq!(b.lo(), a.hi());
            assert!(a.contains(a.lo()) && !a.contains(a.hi()));
        }
    }

    #[test]
    fn grid_validation() {
        assert!(FrequencyGrid::new(100, 8).is_err());
        assert!(FrequencyGrid::new(4, 1).is_err());
        assert!(FrequencyGrid::new(64, 0).is_err());
        assert!(FrequencyGrid::new(8, 8).is_err());
    }
}
