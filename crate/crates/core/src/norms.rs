//! Norms on spectral fields and trajectories.
//!
//! Frequency-side sums carry the mode weight `dxi`; physical-space norms
//! use the rectangle rule on the sample grid (spectrally accurate for
//! smooth periodic integrands). Time integration uses left-endpoint
//! Riemann sums so that a constant-in-time trajectory of value `c` has
//! mixed norm exactly `T^(1/p) * c`.

use crate::error::{Error, Result};
use crate::grid::SpectralField;
use crate::spacetime::SpaceTimeField;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Identifies a norm in reports and CLI output.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormSpec {
    Lebesgue { p: f64 },
    Sobolev { s: f64, homogeneous: bool },
    FourierLebesgue { r: f64 },
    Modulation { p: f64 },
    MixedSpaceTime { p: f64, q: f64 },
    Bourgain { s: f64, variant: BourgainVariant },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum BourgainVariant {
    /// sup over dyadic modulation shells (weak endpoint).
    SupShell,
    /// sum of square roots over shells (the stronger variant).
    SumShell,
}

fn check_exponent(name: &str, p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("{name} must lie in [1, inf], got {p}")));
    }
    Ok(())
}

/// l^p combination of a list of nonnegative terms, `p in [1, inf]`.
fn lp_combine(terms: impl Iterator<Item = f64>, p: f64) -> f64 {
    if p.is_infinite() {
        terms.fold(0.0, f64::max)
    } else {
        terms.map(|t| t.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Physical-space `L^p` norm over one period.
pub fn lebesgue_norm(u: &SpectralField, p: f64) -> Result<f64> {
    check_exponent("p", p)?;
    let samples = u.to_physical();
    let dx = u.grid().dx();
    if p.is_infinite() {
        Ok(samples.iter().map(|c| c.norm()).fold(0.0, f64::max))
    } else {
        Ok(samples.iter().map(|c| c.norm().powf(p)).sum::<f64>().powf(1.0 / p) * dx.powf(1.0 / p))
    }
}

/// Weight `|xi|^(2s)` with the convention `0^0 = 1` so that `s = 0`
/// reduces to the plain `L^2` norm.
fn homogeneous_weight(xi: f64, s: f64) -> f64 {
    if s == 0.0 {
        1.0
    } else {
        xi.abs().powf(2.0 * s)
    }
}

/// Sobolev norm of order `s`: homogeneous `|xi|^(2s)` or inhomogeneous
/// `(1 + xi^2)^s` weights on the frequency side.
pub fn sobolev_norm(u: &SpectralField, s: f64, homogeneous: bool) -> Result<f64> {
    if s.is_nan() {
        return Err(Error::InvalidParameter("sobolev order must be a number".into()));
    }
    if homogeneous && s < 0.0 {
        let dc = u.coeff(0).norm();
        let scale = u.l2_norm();
        if dc > 1e-14 * scale.max(1e-300) {
            return Err(Error::DomainError(format!(
                "negative-order homogeneous norm undefined: DC coefficient {dc:.3e} is nonzero"
            )));
        }
    }
    let dxi = u.grid().dxi();
    let mut acc = 0.0;
    for (_, xi, c) in u.modes() {
        let w = if homogeneous {
            if xi == 0.0 && s < 0.0 {
                continue; // DC verified zero above
            }
            homogeneous_weight(xi, s)
        } else {
            (1.0 + xi * xi).powf(s)
        };
        acc += w * c.norm_sqr();
    }
    Ok((acc * dxi).sqrt())
}

/// Fourier-Lebesgue norm: the dual-exponent Lebesgue norm of the
/// coefficient profile, `||uhat||_{L^{r'}(dxi)}` with `1/r + 1/r' = 1`.
/// `r = 2` recovers `L^2` by Plancherel; `r = 1` degenerates to
/// `sup |uhat|`, `r = inf` to `dxi * Sum |uhat|`.
pub fn fourier_lebesgue_norm(u: &SpectralField, r: f64) -> Result<f64> {
    check_exponent("r", r)?;
    let dxi = u.grid().dxi();
    if r == 1.0 {
        return Ok(u.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max));
    }
    let rp = if r.is_infinite() { 1.0 } else { r / (r - 1.0) };
    Ok(u.coeffs().iter().map(|c| c.norm().powf(rp)).sum::<f64>().powf(1.0 / rp) * dxi.powf(1.0 / rp))
}

/// Modulation norm `M_{2,p}`: `l^p` over unit-block `L^2` masses.
pub fn modulation_norm(u: &SpectralField, p: f64) -> Result<f64> {
    check_exponent("p", p)?;
    Ok(lp_combine(u.unit_blocks().into_iter().map(|(_, b)| b), p))
}

/// Mixed space-time norm `L^p_t L^q_x` over the trajectory's window,
/// left-endpoint Riemann in time. `p = inf` takes the sup over all frames.
pub fn mixed_spacetime_norm(field: &SpaceTimeField, p: f64, q: f64) -> Result<f64> {
    check_exponent("p", p)?;
    check_exponent("q", q)?;
    if p.is_infinite() {
        let mut best = 0.0_f64;
        for frame in field.frames() {
            best = best.max(lebesgue_norm(frame, q)?);
        }
        return Ok(best);
    }
    if field.len() < 2 {
        return Err(Error::ResolutionError("mixed norm needs at least two frames".into()));
    }
    let dt = field.dt();
    let mut acc = 0.0;
    for frame in &field.frames()[..field.len() - 1] {
        acc += lebesgue_norm(frame, q)?.powf(p);
    }
    Ok((acc * dt).powf(1.0 / p))
}

/// Per-shell breakdown of a dispersive space-time norm.
#[derive(Clone, Debug, Serialize)]
pub struct ShellMass {
    /// Lower edge of the dyadic modulation shell `[mu, 2*mu)`.
    pub mu: f64,
    /// Integral of `|uhat(tau,xi)|^2 |xi|^(2s) |tau - xi^2|` over the shell.
    pub weighted: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BourgainNorm {
    pub value: f64,
    pub variant: BourgainVariant,
    pub shells: Vec<ShellMass>,
    /// Fraction of the unweighted `|uhat(tau,xi)|^2` mass with
    /// `|tau - xi^2| < 2 * dtau` (free waves concentrate here).
    pub low_modulation_fraction: f64,
    /// Index into `shells` of the largest weighted mass.
    pub dominant_shell: usize,
}

/// Dispersive space-time norm with weight `|tau - xi^2|` over dyadic
/// modulation shells.
///
/// The trajectory is multiplied by a cosine taper over the first and last
/// 10% of the window, then transformed in time with the kernel
/// `exp(+i*t*tau)` (opposite sign to the space kernel) so that free waves
/// `exp(-i*t*xi^2)` land on the ridge `tau = xi^2`. Shell `k` collects
/// `|tau - xi^2|` in `[dtau*2^k, dtau*2^(k+1))`; sub-`dtau` modulations
/// are folded into shell 0 so no mass is dropped.
pub fn bourgain_norm(field: &SpaceTimeField, s: f64, variant: BourgainVariant) -> Result<BourgainNorm> {
    let frames = field.len();
    if frames < 8 {
        return Err(Error::ResolutionError(format!(
            "dispersive norm needs at least 8 time samples, got {frames}"
        )));
    }
    let grid = field.grid();
    let dt = field.dt();
    let tau_max = std::f64::consts::PI / dt;

    // data must keep its frequency ridge inside the resolvable tau range
    let mut xi_sq_max = 0.0_f64;
    let scale: f64 = field.frames().iter().map(|f| f.l2_norm()).fold(0.0, f64::max);
    for frame in field.frames() {
        for (_, xi, c) in frame.modes() {
            if c.norm() > 1e-12 * scale.max(1e-300) {
                xi_sq_max = xi_sq_max.max(xi * xi);
            }
        }
    }
    if xi_sq_max > 0.8 * tau_max {
        return Err(Error::ResolutionError(format!(
            "frequency ridge at tau = {xi_sq_max:.3e} exceeds 80% of the resolvable \
             modulation range {tau_max:.3e}; refine dt"
        )));
    }

    let weights: Vec<f64> =
        (0..frames).map(|k| field.taper_weight(field.time(k), 0.1)).collect();
    let dtau = 2.0 * std::f64::consts::PI / (frames as f64 * dt);

    let shell_count = {
        let top: f64 = tau_max + xi_sq_max;
        ((top / dtau).log2().ceil() as usize + 1).max(1)
    };
    let mut shells = vec![0.0_f64; shell_count];
    let mut low_mass = 0.0_f64;
    let mut total_mass = 0.0_f64;

    let n = grid.n();
    let mut series = vec![Complex64::ZERO; frames];
    for idx in 0..n {
        let xi = grid.xi(grid.signed_index(idx));
        if s < 0.0 && xi == 0.0 {
            continue;
        }
        for (k, slot) in series.iter_mut().enumerate() {
            *slot = field.frame(k).coeffs()[idx] * weights[k];
        }
        // kernel exp(+i*t*tau): an inverse-direction DFT, plus the t0 phase
        let mut buf = series.clone();
        crate::grid::dft_in_place(&mut buf, true);
        let xi_w = homogeneous_weight(xi, s);
        for (l, val) in buf.iter().enumerate() {
            let l_signed = if (l as i64) < (frames as i64 + 1) / 2 { l as i64 } else { l as i64 - frames as i64 };
            let tau = l_signed as f64 * dtau;
            let phase = Complex64::from_polar(1.0, field.t0() * tau);
            let coeff = (phase * val) * (dt / crate::grid::SQRT_2PI);
            let mass = coeff.norm_sqr();
            let modulation = (tau - xi * xi).abs();
            total_mass += mass;
            if modulation < 2.0 * dtau {
                low_mass += mass;
            }
            let shell = if modulation < dtau {
                0
            } else {
                ((modulation / dtau).log2().floor() as usize).min(shell_count - 1)
            };
            shells[shell] += mass * xi_w * modulation;
        }
    }

    let cell = dtau * grid.dxi();
    for s in &mut shells {
        *s *= cell;
    }

    let value = match variant {
        BourgainVariant::SupShell => shells.iter().fold(0.0_f64, |a, &b| a.max(b)).sqrt(),
        BourgainVariant::SumShell => shells.iter().map(|&m| m.sqrt()).sum(),
    };
    let dominant = shells
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    Ok(BourgainNorm {
        value,
        variant,
        shells: shells
            .iter()
            .enumerate()
            .map(|(k, &weighted)| ShellMass { mu: dtau * (1u64 << k.min(62)) as f64, weighted })
            .collect(),
        low_modulation_fraction: if total_mass > 0.0 { low_mass / total_mass } else { 1.0 },
        dominant_shell: dominant,
    })
}

pub fn norm_value(spec: &NormSpec, u: &SpectralField) -> Result<f64> {
    match spec {
        NormSpec::Lebesgue { p } => lebesgue_norm(u, *p),
        NormSpec::Sobolev { s, homogeneous } => sobolev_norm(u, *s, *homogeneous),
        NormSpec::FourierLebesgue { r } => fourier_lebesgue_norm(u, *r),
        NormSpec::Modulation { p } => modulation_norm(u, *p),
        other => Err(Error::InvalidParameter(format!(
            "norm {other:?} needs a space-time trajectory"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::FrequencyGrid;

    fn flat_band(grid: FrequencyGrid, lo: f64, hi: f64) -> SpectralField {
        SpectralField::from_profile(grid, |xi| {
            if xi >= lo && xi < hi {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        })
    }

    #[test]
    fn lebesgue_constant_function() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let ones = vec![Complex64::ONE; 256];
        let u = SpectralField::from_physical(grid, &ones).unwrap();
        let l = grid.period();
        for (p, expect) in [(1.0, l), (2.0, l.sqrt()), (4.0, l.powf(0.25)), (f64::INFINITY, 1.0)] {
            let got = lebesgue_norm(&u, p).unwrap();
            assert!((got - expect).abs() <= 1e-10 * expect, "p={p}: {got} vs {expect}");
        }
    }

    #[test]
    fn lebesgue_gaussian_l4_quadrature_oracle() {
        // || e^{-x^2/2} ||_{L^4}^4 = Int e^{-2x^2} dx = sqrt(pi/2)
        let grid = FrequencyGrid::new(1024, 8).unwrap();
        let shift = grid.period() / 2.0;
        let samples: Vec<Complex64> = (0..1024)
            .map(|i| {
                let x = grid.x(i) - shift;
                Complex64::new((-x * x / 2.0).exp(), 0.0)
            })
            .collect();
        let u = SpectralField::from_physical(grid, &samples).unwrap();
        let expect = (std::f64::consts::PI / 2.0).sqrt().powf(0.25);
        let got = lebesgue_norm(&u, 4.0).unwrap();
        assert!((got - expect).abs() <= 1e-8 * expect);
    }

    #[test]
    fn plancherel_flat_band() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let u = flat_band(grid, 0.0, 1.0);
        assert!((u.l2_norm() - 1.0).abs() < 1e-12);
        assert!((lebesgue_norm(&u, 2.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((fourier_lebesgue_norm(&u, 2.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sobolev_flat_band_values() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let u = flat_band(grid, 1.0, 2.0);
        assert!((sobolev_norm(&u, 0.0, true).unwrap() - 1.0).abs() < 1e-12);
        // s = 1: discrete sum is the left Riemann sum of Int_1^2 xi^2 = 7/3,
        // converging at rate O(dxi). Check value and rate.
        let coarse = sobolev_norm(&u, 1.0, true).unwrap().powi(2);
        let fine_grid = FrequencyGrid::new(1024, 32).unwrap();
        let fine = sobolev_norm(&flat_band(fine_grid, 1.0, 2.0), 1.0, true).unwrap().powi(2);
        let exact = 7.0 / 3.0;
        assert!((coarse - exact).abs() < 3.0 * grid.dxi());
        assert!((fine - exact).abs() < 3.0 * fine_grid.dxi());
        let rate = (coarse - exact).abs() / (fine - exact).abs();
        assert!(rate > 2.0, "expected ~4x error drop for 4x finer dxi, got {rate}");
    }

    #[test]
    fn sobolev_negative_order_rejects_dc() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let u = flat_band(grid, 0.0, 1.0); // contains xi = 0
        assert!(matches!(sobolev_norm(&u, -0.5, true), Err(Error::DomainError(_))));
        let v = flat_band(grid, 1.0, 2.0);
        assert!(sobolev_norm(&v, -0.5, true).is_ok());
        // inhomogeneous weight tolerates DC
        assert!(sobolev_norm(&u, -0.5, false).is_ok());
    }

    #[test]
    fn fourier_lebesgue_flat_band_values() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let u = flat_band(grid, 0.0, 2.0);
        // r = 2 -> sqrt(measure) = sqrt(2); r = inf -> dxi-L^1 = 2; r = 1 -> sup = 1
        assert!((fourier_lebesgue_norm(&u, 2.0).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert!((fourier_lebesgue_norm(&u, f64::INFINITY).unwrap() - 2.0).abs() < 1e-12);
        assert!((fourier_lebesgue_norm(&u, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn modulation_flat_band_values() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let u = flat_band(grid, 0.0, 2.0);
        // two blocks of mass 1: l^4 gives 2^(1/4), l^inf gives 1
        assert!((modulation_norm(&u, 4.0).unwrap() - 2f64.powf(0.25)).abs() < 1e-12);
        assert!((modulation_norm(&u, f64::INFINITY).unwrap() - 1.0).abs() < 1e-12);
        assert!((modulation_norm(&u, 2.0).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn modulation_norm_non_increasing_in_p() {
        let grid = FrequencyGrid::new(512, 8).unwrap();
        let u = SpectralField::from_profile(grid, |xi| {
            Complex64::new((-(xi * xi) / 8.0).exp() * (1.0 + 0.3 * (3.0 * xi).sin()), 0.2 * xi.cos())
        });
        let ps = [1.0, 2.0, 3.0, 4.0, 8.0, f64::INFINITY];
        let vals: Vec<f64> = ps.iter().map(|&p| modulation_norm(&u, p).unwrap()).collect();
        for w in vals.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
    }

    #[test]
    fn block_holder_embedding_constant_one() {
        // per-block Hoelder with unit block measure: M_{2,p} <= ||uhat||_{L^p(dxi)}
        let grid = FrequencyGrid::new(512, 8).unwrap();
        let u = SpectralField::from_profile(grid, |xi| {
            Complex64::new((1.0 + xi.abs()).powf(-0.8), (0.7 * xi).sin() * 0.4)
        });
        for p in [2.0, 4.0, 8.0] {
            let lhs = modulation_norm(&u, p).unwrap();
            let rhs = fourier_lebesgue_norm(&u, p / (p - 1.0)).unwrap();
            assert!(lhs <= rhs * (1.0 + 1e-9), "p={p}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn mixed_norm_constant_in_time() {
        let grid = FrequencyGrid::new(128, 8).unwrap();
        let u = flat_band(grid, 0.0, 1.0);
        let st = SpaceTimeField::sample(0.0, 0.05, 20, |_| u.clone()).unwrap();
        let lq = lebesgue_norm(&u, 6.0).unwrap();
        let got = mixed_spacetime_norm(&st, 4.0, 6.0).unwrap();
        let expect = 1.0_f64.powf(0.25) * lq;
        assert!((got - expect).abs() < 1e-10 * expect);
        let sup = mixed_spacetime_norm(&st, f64::INFINITY, 6.0).unwrap();
        assert!((sup - lq).abs() < 1e-12 * lq);
    }

    #[test]
    fn bourgain_free_wave_concentrates_on_ridge() {
        let grid = FrequencyGrid::new(128, 8).unwrap();
        let u = SpectralField::from_profile(grid, |xi| {
            if xi.abs() < 2.0 {
                Complex64::new((-(xi * xi)).exp(), 0.0)
            } else {
                Complex64::ZERO
            }
        });
        let st = SpaceTimeField::sample(0.0, 1.0 / 256.0, 256, |t| u.free_evolve(t)).unwrap();
        let b = bourgain_norm(&st, 0.0, BourgainVariant::SupShell).unwrap();
        assert!(
            b.low_modulation_fraction >= 0.9,
            "low-modulation fraction {}",
            b.low_modulation_fraction
        );
        let sum = bourgain_norm(&st, 0.0, BourgainVariant::SumShell).unwrap();
        assert!(sum.value >= b.value);
    }

    #[test]
    fn bourgain_rejects_tiny_sample_counts() {
        let grid = FrequencyGrid::new(64, 8).unwrap();
        let u = flat_band(grid, 0.0, 1.0);
        let st = SpaceTimeField::sample(0.0, 0.1, 4, |t| u.free_evolve(t)).unwrap();
        assert!(matches!(
            bourgain_norm(&st, 0.0, BourgainVariant::SupShell),
            Err(Error::ResolutionError(_))
        ));
    }

    #[test]
    fn bourgain_rejects_unresolved_ridge() {
        let grid = FrequencyGrid::new(256, 8).unwrap();
        let u = flat_band(grid, 15.0, 16.0); // xi^2 up to 256
        let st = SpaceTimeField::sample(0.0, 0.05, 32, |t| u.free_evolve(t)).unwrap();
        assert!(matches!(
            bourgain_norm(&st, 0.0, BourgainVariant::SupShell),
            Err(Error::ResolutionError(_))
        ));
    }
}
