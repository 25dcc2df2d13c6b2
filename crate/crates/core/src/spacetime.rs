//! Space-time samples of a trajectory: uniformly spaced frames of
//! frequency-side fields.

use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, SpectralField};

#[derive(Clone, Debug)]
pub struct SpaceTimeField {
    grid: FrequencyGrid,
    t0: f64,
    dt: f64,
    frames: Vec<SpectralField>,
}

impl SpaceTimeField {
    pub fn new(t0: f64, dt: f64, frames: Vec<SpectralField>) -> Result<Self> {
        if frames.is_empty() {
            return Err(Error::InvalidParameter("space-time field needs at least one frame".into()));
        }
        if !(dt > 0.0) {
            return Err(Error::InvalidParameter(format!("frame spacing must be positive, got {dt}")));
        }
        let grid = frames[0].grid();
        if frames.iter().any(|f| f.grid() != grid) {
            return Err(Error::GridMismatch("frames live on different grids".into()));
        }
        Ok(SpaceTimeField { grid, t0, dt, frames })
    }

    /// Samples a time-dependent rule at `steps + 1` uniform times covering
    /// `[t0, t0 + steps*dt]`.
    pub fn sample<F: FnMut(f64) -> SpectralField>(
        t0: f64,
        dt: f64,
        steps: usize,
        mut rule: F,
    ) -> Result<Self> {
        let frames: Vec<SpectralField> = (0..=steps).map(|k| rule(t0 + k as f64 * dt)).collect();
        SpaceTimeField::new(t0, dt, frames)
    }

    pub fn grid(&self) -> FrequencyGrid {
        self.grid
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Number of frames (one more than the number of time steps).
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total covered time span `dt * (len - 1)`.
    pub fn span(&self) -> f64 {
        self.dt * (self.frames.len() - 1) as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    pub fn frame(&self, k: usize) -> &SpectralField {
        &self.frames[k]
    }

    pub fn frames(&self) -> &[SpectralField] {
        &self.frames
    }

    pub fn map_frames<F: FnMut(f64, &SpectralField) -> SpectralField>(&self, mut f: F) -> Result<Self> {
        let frames: Vec<SpectralField> =
            self.frames.iter().enumerate().map(|(k, fr)| f(self.time(k), fr)).collect();
        SpaceTimeField::new(self.t0, self.dt, frames)
    }

    pub fn is_finite(&self) -> bool {
        self.frames.iter().all(|f| f.is_finite())
    }

    /// Cosine (Tukey) taper weight over `[t0, t0 + span]` with ramps on the
    /// first and last `ramp_fraction` of the window.
    pub fn taper_weight(&self, t: f64, ramp_fraction: f64) -> f64 {
        let span = self.span();
        if span == 0.0 {
            return 1.0;
        }
        let s = (t - self.t0) / span;
        let r = ramp_fraction;
        if s <= 0.0 || s >= 1.0 {
            0.0
        } else if s < r {
            0.5 * (1.0 - (std::f64::consts::PI * s / r).cos())
        } else if s > 1.0 - r {
            0.5 * (1.0 - (std::f64::consts::PI * (1.0 - s) / r).cos())
        } else {
            1.0
        }
    }
}
