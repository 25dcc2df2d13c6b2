//! Structured results for estimate sweeps: one row per sweep point, a
//! fitted growth law where applicable, and a four-way verdict. Reports
//! serialize to JSON, CSV, and plain three-column plot data.

use crate::fit::{PowerLawFit, EXPONENT_SLACK, RESIDUAL_THRESHOLD};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// All measured ratios stay inside the declared band.
    Bounded,
    /// The fitted exponent does not exceed the predicted one by more
    /// than [`EXPONENT_SLACK`].
    GrowthConsistent,
    Violated,
    /// The data is too noisy to support any conclusion; this is never
    /// treated as a pass.
    Inconclusive,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(self, Verdict::Bounded | Verdict::GrowthConsistent)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Bounded => "bounded",
            Verdict::GrowthConsistent => "growth_consistent",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

/// One sweep point: abscissa, measured quantity, and the reference it is
/// compared against (a bound, an exact value, or a scaling envelope).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub x: f64,
    pub measured: f64,
    pub reference: f64,
    pub ratio: f64,
}

impl SweepRow {
    pub fn new(x: f64, measured: f64, reference: f64) -> Self {
        SweepRow { x, measured, reference, ratio: measured / reference }
    }
}

/// Where the numbers came from: grid, seed, and any estimate-specific
/// parameters (kept sorted so serialized output is reproducible).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        Provenance { n, m, seed, extra: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.extra.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EstimateReport {
    pub estimate_id: String,
    pub predicted_law: String,
    pub sweep: Vec<SweepRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitted: Option<PowerLawFit>,
    pub verdict: Verdict,
    pub provenance: Provenance,
}

impl EstimateReport {
    pub fn ratios(&self) -> Vec<f64> {
        self.sweep.iter().map(|r| r.ratio).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# estimate_id={}\n", self.estimate_id));
        out.push_str(&format!("# predicted_law={}\n", self.predicted_law));
        out.push_str(&format!("# verdict={}\n", self.verdict));
        out.push_str("x,measured,reference,ratio\n");
        for row in &self.sweep {
            out.push_str(&format!("{},{},{},{}\n", row.x, row.measured, row.reference, row.ratio));
        }
        out
    }

    /// Three columns `x y fit`, one row per sweep point, preceded by a
    /// gnuplot-style script comment. The third column is the fitted power
    /// law where one was computed, otherwise the reference bound.
    pub fn to_plot_data(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}: measured vs {}\n", self.estimate_id, self.predicted_law));
        out.push_str(
            "# gnuplot> set logscale xy; \
             plot 'this.dat' u 1:2 w p t 'measured', '' u 1:3 w l t 'fit'\n",
        );
        if let Some(fit) = &self.fitted {
            out.push_str(&format!(
                "# fitted exponent {} (rms log-residual {})\n",
                fit.exponent, fit.rms_log_residual
            ));
        }
        out.push_str("# x y fit\n");
        for row in &self.sweep {
            let fit_col = match &self.fitted {
                Some(f) => f.amplitude * row.x.powf(f.exponent),
                None => row.reference,
            };
            out.push_str(&format!("{} {} {}\n", row.x, row.measured, fit_col));
        }
        out
    }
}

/// Boundedness verdict: the spread `max ratio / min ratio` must not
/// exceed `band`, and every ratio must be finite and positive.
pub fn verdict_for_spread(rows: &[SweepRow], band: f64) -> Verdict {
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    if ratios.is_empty() || ratios.iter().any(|r| !r.is_finite() || *r <= 0.0) {
        return Verdict::Inconclusive;
    }
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    if max / min <= band {
        Verdict::Bounded
    } else {
        Verdict::Violated
    }
}

/// Boundedness verdict against an absolute cap on each ratio.
pub fn verdict_for_cap(rows: &[SweepRow], cap: f64) -> Verdict {
    if rows.is_empty() || rows.iter().any(|r| !r.ratio.is_finite()) {
        return Verdict::Inconclusive;
    }
    if rows.iter().all(|r| r.ratio <= cap) {
        Verdict::Bounded
    } else {
        Verdict::Violated
    }
}

/// Growth verdict from a fitted exponent against a predicted one. A noisy
/// fit is inconclusive regardless of the exponent.
pub fn verdict_for_growth(fit: &PowerLawFit, predicted_exponent: f64) -> Verdict {
    if !fit.rms_log_residual.is_finite() || fit.rms_log_residual > RESIDUAL_THRESHOLD {
        return Verdict::Inconclusive;
    }
    if fit.exponent <= predicted_exponent + EXPONENT_SLACK {
        Verdict::GrowthConsistent
    } else {
        Verdict::Violated
    }
}
