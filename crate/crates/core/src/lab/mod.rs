//! Config-driven empirical verification of the quantitative estimates:
//! each verifier measures LHS/RHS ratios over a parameter sweep, fits a
//! growth exponent where a law is predicted, and returns an
//! [`EstimateReport`](crate::report::EstimateReport) with a verdict.

mod bilinear;
mod embeddings;
mod persistence;
mod restriction;
mod scaling;
mod strichartz;

pub use bilinear::{
    bilinear_identity_check, bilinear_kernel_oracle, verify_bilinear_inequality,
    verify_bilinear_kernel, BilinearIdentityCheck,
};
pub use embeddings::verify_embeddings;
pub use persistence::verify_norm_persistence;
pub use restriction::{verify_restriction_l4, RestrictionData};
pub use scaling::{sharpness_log_ratio, verify_scaling_law};
pub use strichartz::verify_strichartz;

use crate::error::{Error, Result};
use crate::orlicz::{choose_correction_constant, YoungFunction};
use serde::{Deserialize, Serialize};

/// Young-function instance shared by the verification suites:
/// `ln Phi(x) = -(1/x)^(1/gamma) + C x`, with the correction constant `C`
/// chosen large enough that both the profile and its square-root
/// composition `Phi(sqrt(x))` are convex. The block-averaging comparisons
/// need the composed convexity, so the larger of the two scan results is
/// taken.
pub fn lab_young(gamma: f64) -> Result<YoungFunction> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Orlicz parameter must be positive, got {gamma}"
        )));
    }
    let alpha = 1.0 / gamma;
    let c_plain = choose_correction_constant(alpha, 1.0, 10.0)?;
    let c_sqrt = choose_correction_constant(alpha / 2.0, 0.5, 10.0)?;
    YoungFunction::new(alpha, 1.0, c_plain.max(c_sqrt))
}

/// Shared knob set for the verification suites. Individual verifiers read
/// the fields they need; `validate` enforces the admissible ranges once.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EstimateParams {
    /// Interpolation weight, strictly between 0 and 1.
    pub theta: f64,
    /// Logarithmic growth exponent for the restriction law; > 1.
    pub beta_log: f64,
    /// Data decay exponent; > 0.
    pub beta_decay: f64,
    /// Modulation index; >= 1.
    pub p: f64,
    /// Orlicz parameter; persistence runs need > 2.
    pub gamma: f64,
    /// Time horizon; > 0.
    pub t_final: f64,
    /// Geometric list of cutoff/scaling values.
    pub lambda_sweep: Vec<f64>,
}

impl Default for EstimateParams {
    fn default() -> Self {
        EstimateParams {
            theta: 0.5,
            beta_log: 1.5,
            beta_decay: 1.0,
            p: 4.0,
            gamma: 3.0,
            t_final: 1.0,
            lambda_sweep: vec![8.0, 16.0, 32.0, 64.0],
        }
    }
}

impl EstimateParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "interpolation weight must lie in (0,1), got {}",
                self.theta
            )));
        }
        if !(self.beta_log > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "log exponent must exceed 1, got {}",
                self.beta_log
            )));
        }
        if !(self.beta_decay > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "decay exponent must be positive, got {}",
                self.beta_decay
            )));
        }
        if !(self.p >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "modulation index must be >= 1, got {}",
                self.p
            )));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Orlicz parameter must be positive, got {}",
                self.gamma
            )));
        }
        if !(self.t_final > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "time horizon must be positive, got {}",
                self.t_final
            )));
        }
        if self.lambda_sweep.is_empty() || self.lambda_sweep.iter().any(|l| !(*l > 0.0)) {
            return Err(Error::InvalidParameter("lambda sweep must be non-empty, positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_params_validate() {
        assert!(EstimateParams::default().validate().is_ok());
    }

    #[test]
    fn lab_young_reproduces_frozen_constants() {
        // For gamma = 3 the square-root composition dominates; the scan
        // lands on 51.8 (three significant digits, rounded up).
        let phi = lab_young(3.0).unwrap();
        assert!((phi.correction() - 51.8).abs() < 0.5, "got {}", phi.correction());
        // For gamma = 1 the plain profile alone needs only 0.422; the
        // composed scan may push higher but never below that.
        let phi = lab_young(1.0).unwrap();
        assert!(phi.correction() >= 0.422);
        assert!(lab_young(0.0).is_err());
    }

    #[test]
    fn out_of_range_params_rejected() {
        let mut p = EstimateParams::default();
        p.theta = 1.0;
        assert!(p.validate().is_err());
        let mut p = EstimateParams::default();
        p.beta_log = 1.0;
        assert!(p.validate().is_err());
        let mut p = EstimateParams::default();
        p.lambda_sweep.clear();
        assert!(p.validate().is_err());
    }
}
