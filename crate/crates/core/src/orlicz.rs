//! Orlicz sequence spaces built from the two-parameter Young family
//!
//! ```text
//!     Phi(x) = exp(-x^(-alpha) + C * x^beta),   Phi(0) = 0.
//! ```
//!
//! The essential-infimum factor `exp(-x^(-alpha))` vanishes to all orders
//! at zero, so `Phi` is flat near the origin and grows super-polynomially;
//! the correction `C * x^beta` restores convexity, which fails for small
//! `C`. Everything here works in the log domain (`ln_phi`) wherever the
//! raw values would under- or overflow.

use crate::error::{Error, Result};
use crate::grid::SpectralField;
use serde::{Deserialize, Serialize};

/// Arguments below this have `x^(-alpha) > EXP_CUTOFF` and `Phi` is
/// treated as exactly zero (the true value is below 1e-304).
const EXP_CUTOFF: f64 = 700.0;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct YoungFunction {
    alpha: f64,
    beta: f64,
    c: f64,
}

impl YoungFunction {
    pub fn new(alpha: f64, beta: f64, c: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
        }
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::InvalidParameter(format!("beta must lie in (0, 1], got {beta}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("correction constant must be positive, got {c}")));
        }
        Ok(Self { alpha, beta, c })
    }

    /// The linear-correction instance: exponent pair `(1/gamma, 1)`.
    pub fn primary(gamma: f64, c: f64) -> Result<Self> {
        Self::new(1.0 / gamma, 1.0, c)
    }

    /// Square-root correction: exponent pair `(1/(2*gamma), 1/2)`.
    pub fn sqrt_variant(gamma: f64, c: f64) -> Result<Self> {
        Self::new(1.0 / (2.0 * gamma), 0.5, c)
    }

    /// Quartic-root correction: exponent pair `(1/(4*gamma), 1/4)`.
    pub fn quartic_variant(gamma: f64, c: f64) -> Result<Self> {
        Self::new(1.0 / (4.0 * gamma), 0.25, c)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn correction(&self) -> f64 {
        self.c
    }

    /// The composition `y -> Phi(sqrt(y))`, again of the same family with
    /// halved exponents. Jensen-type averaging arguments need *this*
    /// function convex, which demands a larger correction constant.
    pub fn sqrt_composed(&self) -> YoungFunction {
        YoungFunction { alpha: self.alpha / 2.0, beta: self.beta / 2.0, c: self.c }
    }

    /// `ln Phi(x)` for `x > 0`. Strictly increasing on `(0, inf)`.
    pub fn ln_phi(&self, x: f64) -> f64 {
        -x.powf(-self.alpha) + self.c * x.powf(self.beta)
    }

    pub fn phi(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let neg = x.powf(-self.alpha);
        if neg > EXP_CUTOFF {
            return 0.0;
        }
        (self.c * x.powf(self.beta) - neg).exp()
    }

    /// Analytic derivative `Phi'(x) = Phi(x) * (alpha x^(-alpha-1) + C beta x^(beta-1))`.
    pub fn phi_prime(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let p = self.phi(x);
        if p == 0.0 {
            return 0.0;
        }
        p * (self.alpha * x.powf(-self.alpha - 1.0) + self.c * self.beta * x.powf(self.beta - 1.0))
    }

    /// Inverse on `(0, inf)`, solved in the log domain by bisection.
    pub fn phi_inverse(&self, y: f64) -> Result<f64> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(Error::DomainError(format!("phi_inverse needs y in (0, inf), got {y}")));
        }
        let target = y.ln();
        self.ln_phi_inverse(target)
    }

    /// Solve `ln_phi(x) = target` for `x`; accepts targets far outside the
    /// representable range of `Phi` itself.
    pub fn ln_phi_inverse(&self, target: f64) -> Result<f64> {
        let mut lo = 1.0_f64;
        let mut hi = 1.0_f64;
        let mut guard = 0;
        while self.ln_phi(lo) > target {
            lo *= 0.5;
            guard += 1;
            if guard > 2000 {
                return Err(Error::ConvergenceFailure("ln_phi_inverse: lower bracket underflow".into()));
            }
        }
        guard = 0;
        while self.ln_phi(hi) < target {
            hi *= 2.0;
            guard += 1;
            if guard > 2000 {
                return Err(Error::ConvergenceFailure("ln_phi_inverse: upper bracket overflow".into()));
            }
        }
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if self.ln_phi(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Maximum relative chord violation of `f` over a geometric grid on
/// `[lo, hi]`: positive values mean the midpoint pokes above the chord
/// (convexity failure).
pub fn chord_convexity_deficit(f: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    let ratio = (hi / lo).powf(1.0 / (samples - 1) as f64);
    let mut xs = Vec::with_capacity(samples);
    let mut x = lo;
    for _ in 0..samples {
        xs.push(x);
        x *= ratio;
    }
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    for i in 1..samples - 1 {
        let (x0, x1, x2) = (xs[i - 1], xs[i], xs[i + 1]);
        let theta = (x2 - x1) / (x2 - x0);
        let chord = theta * vals[i - 1] + (1.0 - theta) * vals[i + 1];
        if chord == 0.0 {
            if vals[i] > 0.0 {
                return f64::INFINITY;
            }
            continue;
        }
        worst = worst.max((vals[i] - chord) / chord);
    }
    worst
}

const CONVEXITY_TOL: f64 = 1e-12;

/// Chord-convexity of the Young function with exponents `(alpha, beta)` and
/// constant `c`, scanned on `[lo, hi]`.
pub fn is_chord_convex(alpha: f64, beta: f64, c: f64, lo: f64, hi: f64) -> Result<bool> {
    let phi = YoungFunction::new(alpha, beta, c)?;
    let decades = (hi / lo).log10();
    let samples = ((decades * 160.0).ceil() as usize).max(64);
    Ok(chord_convexity_deficit(|x| phi.phi(x), lo, hi, samples) <= CONVEXITY_TOL)
}

/// Smallest correction constant (to three significant digits, rounded up)
/// making `x -> exp(-x^(-alpha) + C x^beta)` chord-convex on
/// `[1e-6, x_max]`.
///
/// Doubling search from `C = 1`, then bisection. The chord deficit is
/// monotone decreasing in `C` throughout the range where the minimum
/// lives for all exponent pairs used here, so the bisection is sound.
pub fn choose_correction_constant(alpha: f64, beta: f64, x_max: f64) -> Result<f64> {
    if !(x_max > 1e-6) {
        return Err(Error::InvalidParameter("x_max must exceed the scan floor 1e-6".into()));
    }
    min_correction_constant(alpha, beta, 1e-6, x_max)
}

fn min_correction_constant(alpha: f64, beta: f64, lo: f64, hi: f64) -> Result<f64> {
    let mut c_hi = 1.0_f64;
    let mut steps = 0;
    while !is_chord_convex(alpha, beta, c_hi, lo, hi)? {
        c_hi *= 2.0;
        steps += 1;
        if c_hi > 1e6 {
            return Err(Error::ConvergenceFailure(format!(
                "no convexifying constant below 1e6 for exponents ({alpha}, {beta})"
            )));
        }
    }
    let mut c_lo = if steps == 0 { 0.0 } else { c_hi / 2.0 };
    while c_hi - c_lo > 5e-4 * c_hi {
        let mid = 0.5 * (c_lo + c_hi);
        if mid <= 0.0 {
            break;
        }
        if is_chord_convex(alpha, beta, mid, lo, hi)? {
            c_hi = mid;
        } else {
            c_lo = mid;
        }
    }
    // round up to 3 significant digits, keeping the pass property
    let mag = 10f64.powf(c_hi.log10().floor() - 2.0);
    let mut rounded = (c_hi / mag).ceil() * mag;
    while !is_chord_convex(alpha, beta, rounded, lo, hi)? {
        rounded += mag;
    }
    Ok(rounded)
}

fn validate_values(values: &[f64]) -> Result<()> {
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidParameter("sequence contains NaN".into()));
    }
    Ok(())
}

/// Luxemburg norm of a weighted sequence:
/// `inf { k > 0 : Sum_i w_i * Phi(|a_i| / k) <= 1 }`.
pub fn luxemburg_weighted_norm(phi: &YoungFunction, pairs: &[(f64, f64)]) -> Result<f64> {
    for (w, a) in pairs {
        if w.is_nan() || a.is_nan() || *w < 0.0 {
            return Err(Error::InvalidParameter("weights must be nonnegative and finite".into()));
        }
    }
    let active: Vec<(f64, f64)> =
        pairs.iter().map(|&(w, a)| (w, a.abs())).filter(|&(w, a)| w > 0.0 && a > 0.0).collect();
    if active.is_empty() {
        return Ok(0.0);
    }
    let modular = |k: f64| -> f64 { active.iter().map(|&(w, a)| w * phi.phi(a / k)).sum() };

    // Feasible bracket: at k_hi every term is at most (its weight)/(total
    // weight); at k_lo some single term already reaches 1 on its own.
    let total_w: f64 = active.iter().map(|&(w, _)| w).sum();
    let a_max = active.iter().map(|&(_, a)| a).fold(0.0, f64::max);
    let mut k_hi = a_max / phi.ln_phi_inverse(-(total_w.ln()))?;
    let mut k_lo = active
        .iter()
        .map(|&(w, a)| Ok(a / phi.ln_phi_inverse(-(w.ln()))?))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0_f64, f64::max);
    if k_lo > k_hi {
        // possible only through rounding at the bracket edges
        std::mem::swap(&mut k_lo, &mut k_hi);
    }
    if modular(k_hi) > 1.0 {
        let mut guard = 0;
        while modular(k_hi) > 1.0 {
            k_hi *= 2.0;
            guard += 1;
            if guard > 200 {
                return Err(Error::ConvergenceFailure("luxemburg: upper bracket did not close".into()));
            }
        }
    }
    if modular(k_lo) <= 1.0 {
        return Ok(k_lo);
    }
    for _ in 0..200 {
        let mid = (k_lo * k_hi).sqrt();
        if modular(mid) <= 1.0 {
            k_hi = mid;
        } else {
            k_lo = mid;
        }
        if k_hi - k_lo <= 1e-13 * k_hi {
            break;
        }
    }
    Ok(k_hi)
}

/// Unweighted Luxemburg sequence norm `||a||_{l^Phi}`.
pub fn luxemburg_norm(phi: &YoungFunction, values: &[f64]) -> Result<f64> {
    validate_values(values)?;
    let pairs: Vec<(f64, f64)> = values.iter().map(|&a| (1.0, a)).collect();
    luxemburg_weighted_norm(phi, &pairs)
}

/// Log-sum-exp of a slice.
fn lse(terms: &[f64]) -> f64 {
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

/// Luxemburg norm for scales beyond floating-point range. Each entry is a
/// pair `(ln w_i, ln a_i)`; the return value is `ln` of the norm.
///
/// The modular in the log domain is
/// `ln S(lambda) = LSE_i [ ln w_i - e^{-alpha u_i} + C e^{beta u_i} ]`
/// with `u_i = ln a_i - lambda`; any term whose growth part alone
/// overflows is infeasible, so those candidates are rejected directly.
pub fn luxemburg_log_norm(phi: &YoungFunction, entries: &[(f64, f64)]) -> Result<f64> {
    if entries.is_empty() {
        return Err(Error::InvalidParameter("log-domain norm of an empty sequence".into()));
    }
    for (lw, la) in entries {
        if lw.is_nan() || la.is_nan() {
            return Err(Error::InvalidParameter("log-domain entries contain NaN".into()));
        }
    }
    let (alpha, beta, c) = (phi.alpha(), phi.beta(), phi.correction());
    // ln S(lambda), or +inf when any single term overflows
    let ln_modular = |lambda: f64| -> f64 {
        let mut terms = Vec::with_capacity(entries.len());
        for &(lw, la) in entries {
            let u = la - lambda;
            let grow = beta * u;
            if grow > EXP_CUTOFF.ln() + 10.0 {
                return f64::INFINITY; // Phi(a/k) alone is astronomically > 1
            }
            let ln_term = lw - (-alpha * u).exp() + c * grow.exp();
            terms.push(ln_term);
        }
        lse(&terms)
    };

    let ln_w_total = lse(&entries.iter().map(|&(lw, _)| lw).collect::<Vec<_>>());
    let la_max = entries.iter().map(|&(_, la)| la).fold(f64::NEG_INFINITY, f64::max);
    let mut lam_hi = la_max - phi.ln_phi_inverse(-ln_w_total)?.ln();
    let mut lam_lo = entries
        .iter()
        .map(|&(lw, la)| Ok(la - phi.ln_phi_inverse(-lw)?.ln()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    if lam_lo > lam_hi {
        std::mem::swap(&mut lam_lo, &mut lam_hi);
    }
    let mut guard = 0;
    while ln_modular(lam_hi) > 0.0 {
        lam_hi += 1.0;
        guard += 1;
        if guard > 10_000 {
            return Err(Error::ConvergenceFailure("log-domain norm: upper bracket did not close".into()));
        }
    }
    if ln_modular(lam_lo) <= 0.0 {
        return Ok(lam_lo);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lam_lo + lam_hi);
        if ln_modular(mid) <= 0.0 {
            lam_hi = mid;
        } else {
            lam_lo = mid;
        }
        if lam_hi - lam_lo <= 1e-13 * lam_hi.abs().max(1.0) {
            break;
        }
    }
    Ok(lam_hi)
}

/// Orlicz norm of the coefficient profile with frequency measure
/// `weight_scale * dxi` per mode.
pub fn fourier_orlicz_norm(phi: &YoungFunction, u: &SpectralField, weight_scale: f64) -> Result<f64> {
    if !(weight_scale > 0.0) {
        return Err(Error::InvalidParameter("weight_scale must be positive".into()));
    }
    let w = weight_scale * u.grid().dxi();
    let pairs: Vec<(f64, f64)> = u.coeffs().iter().map(|c| (w, c.norm())).collect();
    luxemburg_weighted_norm(phi, &pairs)
}

/// Orlicz norm over unit-block `L^2` masses (the `l^Phi L^2` modulation
/// quantity).
pub fn modulation_orlicz_norm(phi: &YoungFunction, u: &SpectralField) -> Result<f64> {
    let masses: Vec<f64> = u.unit_blocks().into_iter().map(|(_, b)| b).collect();
    luxemburg_norm(phi, &masses)
}

/// Sliding root-mean-square at dyadic scale `j`: one output entry per
/// window of `2^j` consecutive indices overlapping the support, holding
/// `(2^{-j} * Sum_{k in n..n+2^j} a_k²)^{1/2}` with the input extended by
/// zeros. The divisor is always the full window length, so each output is
/// an equal-weight average of `2^j` squares and scale 0 is the identity
/// up to absolute values.
pub fn block_l2_average(values: &[f64], j: u32) -> Result<Vec<f64>> {
    if j >= 32 {
        return Err(Error::InvalidParameter(format!("scale 2^{j} overflows the index range")));
    }
    validate_values(values)?;
    let w = 1_usize << j;
    let len = values.len() as isize;
    let mut out = Vec::with_capacity(values.len() + w - 1);
    for n in -(w as isize - 1)..len {
        let lo = n.max(0) as usize;
        let hi = (n + w as isize).min(len) as usize;
        let sum: f64 = values[lo..hi].iter().map(|v| v * v).sum();
        out.push((sum / w as f64).sqrt());
    }
    Ok(out)
}

/// Tabulated Legendre transform of a Young function.
///
/// `eval(t)` returns `Psi(t) = sup_{s > 0} (s t - Phi(s))`. The sup is
/// located by a coarse pass over a geometric table of `s` (which picks the
/// correct branch even where `Phi'` is non-monotone) and sharpened by
/// golden-section search inside the winning bracket.
pub struct ConjugateTable {
    phi: YoungFunction,
    s: Vec<f64>,
    phi_vals: Vec<f64>,
}

impl ConjugateTable {
    pub fn new(phi: &YoungFunction) -> Self {
        // cap ln Phi(s_max) around 350 so that s*t - Phi(s) never overflows
        // for any slope t the table can answer; reach far down so the
        // maximizer is bracketed even for slopes near 1e-10, where it sits
        // at s ~ [ln(1/t)]^(-1/alpha)
        let s_max = (350.0 / phi.correction()).powf(1.0 / phi.beta()) * 0.999;
        let s_min = 1e-24_f64.min(s_max / 1e6);
        let samples = 4000;
        let ratio = (s_max / s_min).powf(1.0 / (samples - 1) as f64);
        let mut s = Vec::with_capacity(samples);
        let mut x = s_min;
        for _ in 0..samples {
            s.push(x);
            x *= ratio;
        }
        let phi_vals = s.iter().map(|&x| phi.phi(x)).collect();
        Self { phi: *phi, s, phi_vals }
    }

    pub fn max_argument(&self) -> f64 {
        let s_top = *self.s.last().unwrap();
        self.phi.phi_prime(s_top)
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() {
            return Err(Error::InvalidParameter("conjugate of NaN".into()));
        }
        if t <= 0.0 {
            return Ok(0.0);
        }
        if t >= self.max_argument() {
            return Err(Error::DomainError(format!(
                "conjugate argument {t:.3e} beyond tabulated slope range {:.3e}",
                self.max_argument()
            )));
        }
        let g = |s: f64, p: f64| s * t - p;
        let mut best = 0;
        let mut best_val = f64::NEG_INFINITY;
        for (i, (&s, &p)) in self.s.iter().zip(&self.phi_vals).enumerate() {
            let v = g(s, p);
            if v > best_val {
                best_val = v;
                best = i;
            }
        }
        if best + 1 >= self.s.len() {
            return Err(Error::DomainError(format!(
                "conjugate argument {t:.3e} beyond tabulated slope range {:.3e}",
                self.max_argument()
            )));
        }
        let mut lo = self.s[best.saturating_sub(1)];
        let mut hi = self.s[best + 1];
        let f = |s: f64| s * t - self.phi.phi(s);
        let inv_phi_ratio = (5.0_f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - inv_phi_ratio * (hi - lo);
        let mut x2 = lo + inv_phi_ratio * (hi - lo);
        let mut f1 = f(x1);
        let mut f2 = f(x2);
        for _ in 0..120 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi_ratio * (hi - lo);
                f2 = f(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi_ratio * (hi - lo);
                f1 = f(x1);
            }
            if hi - lo <= 1e-14 * hi {
                break;
            }
        }
        Ok(f(0.5 * (lo + hi)).max(best_val).max(0.0))
    }
}

/// Luxemburg norm of a finite sequence in the conjugate space:
/// `inf { k : Sum_i Psi(|a_i| / k) <= 1 }` with `Psi` read from `table`.
/// Scales beyond the table's slope range count as infeasible.
pub fn conjugate_luxemburg_norm(table: &ConjugateTable, values: &[f64]) -> Result<f64> {
    validate_values(values)?;
    let a_max = values.iter().cloned().fold(0.0_f64, f64::max);
    if a_max == 0.0 {
        return Ok(0.0);
    }
    let modular = |k: f64| -> f64 {
        let mut acc = 0.0;
        for &a in values {
            if a == 0.0 {
                continue;
            }
            match table.eval(a / k) {
                Ok(v) => acc += v,
                Err(_) => return f64::INFINITY,
            }
        }
        acc
    };
    // Seed at argument 1 per entry: the table's slope range tops out near
    // e^350, so seeding from `a_max / max_argument` would start hundreds
    // of octaves below any feasible scale.
    let mut k_hi = a_max;
    let mut guard = 0;
    while modular(k_hi) > 1.0 {
        k_hi *= 2.0;
        guard += 1;
        if guard > 500 {
            return Err(Error::ConvergenceFailure("conjugate norm: no feasible scale".into()));
        }
    }
    let mut k_lo = k_hi;
    guard = 0;
    while modular(k_lo) <= 1.0 && k_lo > f64::MIN_POSITIVE {
        k_lo *= 0.5;
        guard += 1;
        if guard > 2000 {
            return Ok(0.0); // modular vanishes for every positive scale
        }
    }
    for _ in 0..200 {
        let mid = (k_lo * k_hi).sqrt();
        if modular(mid) <= 1.0 {
            k_hi = mid;
        } else {
            k_lo = mid;
        }
        if k_hi - k_lo <= 1e-12 * k_hi {
            break;
        }
    }
    Ok(k_hi)
}

/// Luxemburg norm of the length-`n` all-ones sequence in the conjugate
/// space: `inf { k : n * Psi(1/k) <= 1 }`.
pub fn indicator_conjugate_norm(phi: &YoungFunction, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let table = ConjugateTable::new(phi);
    // treat "beyond table" as infeasible (k far too small)
    let modular = |k: f64| -> f64 {
        match table.eval(1.0 / k) {
            Ok(v) => n as f64 * v,
            Err(_) => f64::INFINITY,
        }
    };
    let mut k_hi = 1.0_f64;
    let mut guard = 0;
    while modular(k_hi) > 1.0 {
        k_hi *= 2.0;
        guard += 1;
        if guard > 500 {
            return Err(Error::ConvergenceFailure("indicator norm: no feasible scale".into()));
        }
    }
    let mut k_lo = k_hi;
    guard = 0;
    while modular(k_lo) <= 1.0 {
        k_lo *= 0.5;
        guard += 1;
        if guard > 2000 {
            return Ok(0.0); // modular vanishes for every positive scale
        }
    }
    for _ in 0..200 {
        let mid = (k_lo * k_hi).sqrt();
        if modular(mid) <= 1.0 {
            k_hi = mid;
        } else {
            k_lo = mid;
        }
        if k_hi - k_lo <= 1e-12 * k_hi {
            break;
        }
    }
    Ok(k_hi)
}
