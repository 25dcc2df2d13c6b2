//! nlslab — command-line driver for the cubic Schrödinger estimate lab.
//!
//! Usage:
//!   nlslab <command> [--config PATH] [--key value | --key=value]...
//!
//! Commands:
//!   norms               norms of one data draw (Lebesgue, Sobolev, modulation, Orlicz)
//!   evolve              split-step evolution; per-frame mass/energy trajectory
//!   picard              Duhamel--Picard iteration with contraction diagnostics
//!   verify-strichartz   dispersive space-time bound across resolution doubling
//!   verify-bilinear     product-transform kernel, high-frequency tail, identity
//!   verify-restriction  L^4 block-restriction growth in the block count
//!   verify-embeddings   norm-embedding constants on random data
//!   verify-scaling      weighted-norm dilation law and its sharpness ratio
//!   verify-persistence  block-Orlicz norm persistence along the flow
//!   vpnorm              exact p-variation of the evolved trajectory
//!   orlicz-conjugate    conjugate-function table for the sqrt-composed profile
//!   acceptance          the full 11-criterion acceptance suite
//!
//! Flags name configuration keys directly (`--grid.N 512`, `--seed 7`,
//! `--time.T 0.5`). `--config PATH` loads a flat `key = value` file first;
//! flags override file entries, file entries override defaults. Artifacts
//! go to the `out` directory: `<command>.json` always, plus
//! `<command>_sweep.csv` and `<command>_plot.dat` (three-column text with a
//! gnuplot-style header) where the command produces a sweep. Every
//! artifact embeds the config hash; identical config and seed reproduce
//! byte-identical files.
//!
//! Exit codes: 0 pass, 1 a checked bound failed, 2 config error.

mod config;

use std::path::PathBuf;
use std::process::exit;

use num_complex::Complex64;
use serde_json::{json, Value};

use nlslab_core::acceptance;
use nlslab_core::data::{generate_data, DataFamily};
use nlslab_core::evolution::{
    mass_energy, picard_iterate, splitstep_evolve, EvolutionConfig, Nonlinearity, PicardMonitor,
};
use nlslab_core::lab::{
    bilinear_identity_check, lab_young, sharpness_log_ratio, verify_bilinear_inequality,
    verify_bilinear_kernel, verify_embeddings, verify_norm_persistence, verify_restriction_l4,
    verify_scaling_law, verify_strichartz, RestrictionData,
};
use nlslab_core::norms::{
    fourier_lebesgue_norm, lebesgue_norm, modulation_norm, sobolev_norm,
};
use nlslab_core::orlicz::{
    choose_correction_constant, modulation_orlicz_norm, ConjugateTable, YoungFunction,
};
use nlslab_core::report::EstimateReport;
use nlslab_core::variation::{adapted_path, vp_norm, vp_norm_bruteforce};
use nlslab_core::{FrequencyGrid, SpectralField};

use config::Config;

const COMMANDS: &[&str] = &[
    "norms",
    "evolve",
    "picard",
    "verify-strichartz",
    "verify-bilinear",
    "verify-restriction",
    "verify-embeddings",
    "verify-scaling",
    "verify-persistence",
    "vpnorm",
    "orlicz-conjugate",
    "acceptance",
];

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" {
        print_usage();
        exit(if args.is_empty() { 2 } else { 0 });
    }
    let (command, config_path, overrides) = match split_args(&args) {
        Ok(parts) => parts,
        Err(msg) => return config_fail(&msg),
    };
    if !COMMANDS.contains(&command.as_str()) {
        return config_fail(&format!(
            "unknown command `{command}`; expected one of: {}",
            COMMANDS.join(", ")
        ));
    }
    let cfg = match Config::resolve(config_path.as_deref(), &overrides) {
        Ok(cfg) => cfg,
        Err(msg) => return config_fail(&msg),
    };
    let ctx = match Ctx::new(&command, cfg) {
        Ok(ctx) => ctx,
        Err(msg) => return config_fail(&msg),
    };
    match ctx.dispatch() {
        Ok(true) => exit(0),
        Ok(false) => exit(1),
        Err(msg) => config_fail(&msg),
    }
}

/// Config/precondition failures print a single machine-readable JSON line
/// on stderr and exit 2.
fn config_fail(detail: &str) {
    eprintln!("{}", json!({ "error": "config", "detail": detail }));
    exit(2);
}

/// Print a line to stdout, tolerating a closed pipe (e.g. `nlslab ... | head`).
fn say(line: impl std::fmt::Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{line}");
}

/// Split argv into command, optional config path, and `key = value`
/// overrides. Accepts `--key value` and `--key=value`.
fn split_args(
    args: &[String],
) -> Result<(String, Option<String>, Vec<(String, String)>), String> {
    let command = args[0].clone();
    if command.starts_with("--") {
        return Err(format!("expected a command before flags, got `{command}`"));
    }
    let mut config_path = None;
    let mut overrides = Vec::new();
    let mut k = 1;
    while k < args.len() {
        let flag = &args[k];
        let Some(stripped) = flag.strip_prefix("--") else {
            return Err(format!("expected `--key value`, got `{flag}`"));
        };
        let (key, value) = if let Some((key, value)) = stripped.split_once('=') {
            k += 1;
            (key.to_string(), value.to_string())
        } else {
            let Some(value) = args.get(k + 1) else {
                return Err(format!("flag `--{stripped}` is missing a value"));
            };
            k += 2;
            (stripped.to_string(), value.clone())
        };
        if key == "config" {
            config_path = Some(value);
        } else {
            overrides.push((key, value));
        }
    }
    Ok((command, config_path, overrides))
}

fn print_usage() {
    // The crate doc comment above is the single copy of the usage text.
    let doc = include_str!("main.rs");
    for line in doc.lines() {
        let Some(rest) = line.strip_prefix("//!") else { break };
        say(rest.strip_prefix(' ').unwrap_or(rest));
    }
}

struct Ctx {
    command: String,
    cfg: Config,
    hash: String,
    out_dir: PathBuf,
}

impl Ctx {
    fn new(command: &str, cfg: Config) -> Result<Ctx, String> {
        let hash = cfg.hash(command);
        let out_dir = PathBuf::from(cfg.str_key("out"));
        std::fs::create_dir_all(&out_dir)
            .map_err(|e| format!("cannot create output directory {}: {e}", out_dir.display()))?;
        Ok(Ctx { command: command.to_string(), cfg, hash, out_dir })
    }

    fn dispatch(&self) -> Result<bool, String> {
        match self.command.as_str() {
            "norms" => self.cmd_norms(),
            "evolve" => self.cmd_evolve(),
            "picard" => self.cmd_picard(),
            "verify-strichartz" => self.cmd_verify_strichartz(),
            "verify-bilinear" => self.cmd_verify_bilinear(),
            "verify-restriction" => self.cmd_verify_restriction(),
            "verify-embeddings" => self.cmd_verify_embeddings(),
            "verify-scaling" => self.cmd_verify_scaling(),
            "verify-persistence" => self.cmd_verify_persistence(),
            "vpnorm" => self.cmd_vpnorm(),
            "orlicz-conjugate" => self.cmd_orlicz_conjugate(),
            "acceptance" => self.cmd_acceptance(),
            other => Err(format!("unknown command `{other}`")),
        }
    }

    // -- shared plumbing ---------------------------------------------------

    fn file_stem(&self) -> String {
        self.command.replace('-', "_")
    }

    fn grid(&self) -> Result<FrequencyGrid, String> {
        let n = self.cfg.usize_key("grid.N")?;
        let m = self.cfg.usize_key("grid.m")?;
        FrequencyGrid::new(n, m).map_err(|e| e.to_string())
    }

    /// The configured data family; `None` encodes identically zero data.
    fn family(&self) -> Result<Option<DataFamily>, String> {
        let base = match self.cfg.str_key("data.family") {
            "zero" => return Ok(None),
            "gaussian" => DataFamily::Gaussian { width: self.cfg.f64_key("data.width")? },
            "flat_band" => DataFamily::FlatBand {
                lo: self.cfg.f64_key("data.lo")?,
                hi: self.cfg.f64_key("data.hi")?,
            },
            "power_decay" => DataFamily::PowerDecay { beta: self.cfg.f64_key("data.beta")? },
            "log_decay" => DataFamily::LogDecay { gamma: self.cfg.f64_key("data.gamma")? },
            other => {
                return Err(format!(
                    "data.family must be zero, gaussian, flat_band, power_decay, \
                     log_decay, got `{other}`"
                ))
            }
        };
        if self.cfg.bool_key("data.random_phase")? {
            Ok(Some(DataFamily::random_phase(base)))
        } else {
            Ok(Some(base))
        }
    }

    fn build_field(&self) -> Result<SpectralField, String> {
        let grid = self.grid()?;
        let u = match self.family()? {
            None => SpectralField::zero(grid),
            Some(family) => generate_data(&family, grid, self.cfg.u64_key("seed")?)
                .map_err(|e| e.to_string())?,
        };
        let scale = self.cfg.f64_key("data.scale")?;
        Ok(u.scale(Complex64::from(scale)))
    }

    fn evolution_config(&self) -> Result<EvolutionConfig, String> {
        let nl = match self.cfg.str_key("evolve.nonlinearity") {
            "defocusing" => Nonlinearity::Defocusing,
            "focusing" => Nonlinearity::Focusing,
            "off" => Nonlinearity::Off,
            other => {
                return Err(format!(
                    "evolve.nonlinearity must be defocusing, focusing or off, got `{other}`"
                ))
            }
        };
        EvolutionConfig::new(self.cfg.f64_key("time.T")?, self.cfg.usize_key("time.M")?)
            .map(|cfg| {
                cfg.with_stride(self.cfg.usize_key("evolve.stride").unwrap_or(10))
                    .with_nonlinearity(nl)
            })
            .map_err(|e| e.to_string())
    }

    fn write_text(&self, name: &str, text: &str) -> Result<PathBuf, String> {
        let path = self.out_dir.join(name);
        std::fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        Ok(path)
    }

    /// Wrap a payload in the common envelope and write `<command>.json`.
    fn write_json(&self, passed: Option<bool>, results: Value) -> Result<PathBuf, String> {
        let mut envelope = serde_json::Map::new();
        envelope.insert("command".into(), Value::String(self.command.clone()));
        envelope.insert("config_hash".into(), Value::String(self.hash.clone()));
        envelope.insert("config".into(), self.cfg.to_json());
        if let Some(flag) = passed {
            envelope.insert("passed".into(), Value::Bool(flag));
        }
        envelope.insert("results".into(), results);
        let text = serde_json::to_string_pretty(&Value::Object(envelope))
            .map_err(|e| format!("serialization failed: {e}"))?
            + "\n";
        self.write_text(&format!("{}.json", self.file_stem()), &text)
    }

    /// Write the sweep CSV and plot data of an estimate report, both
    /// stamped with the config hash.
    fn write_report_artifacts(&self, report: &EstimateReport) -> Result<(), String> {
        let stamp = format!("# config_hash={}\n", self.hash);
        self.write_text(&format!("{}_sweep.csv", self.file_stem()), &(stamp.clone() + &report.to_csv()))?;
        self.write_text(&format!("{}_plot.dat", self.file_stem()), &(stamp + &report.to_plot_data()))?;
        Ok(())
    }

    fn report_value(&self, report: &EstimateReport) -> Result<Value, String> {
        serde_json::to_value(report).map_err(|e| format!("serialization failed: {e}"))
    }

    /// Shared tail for the verify-* commands backed by one estimate report.
    fn finish_report(&self, report: &EstimateReport, extra: Value) -> Result<bool, String> {
        self.write_report_artifacts(report)?;
        let passed = report.verdict.passed();
        let mut results = serde_json::Map::new();
        results.insert("report".into(), self.report_value(report)?);
        if let Value::Object(map) = extra {
            results.extend(map);
        }
        self.write_json(Some(passed), Value::Object(results))?;
        say(format!(
            "{}: verdict {:?}; report in {}",
            self.command,
            report.verdict,
            self.out_dir.join(format!("{}.json", self.file_stem())).display()
        ));
        Ok(passed)
    }

    // -- commands ------------------------------------------------------------

    fn cmd_norms(&self) -> Result<bool, String> {
        let u = self.build_field()?;
        let p = self.cfg.f64_key("norm.p")?;
        if !(p > 1.0) {
            return Err(format!("norm.p must exceed 1, got {p}"));
        }
        let gamma = self.cfg.f64_key("orlicz.gamma")?;
        let phi = lab_young(gamma).map_err(|e| e.to_string())?;
        let core = |r: nlslab_core::Result<f64>| r.map_err(|e| e.to_string());
        let norms = json!({
            "l2": u.l2_norm(),
            "l4": core(lebesgue_norm(&u, 4.0))?,
            "h1": core(sobolev_norm(&u, 1.0, false))?,
            "m2_2": core(modulation_norm(&u, 2.0))?,
            "m2_4": core(modulation_norm(&u, 4.0))?,
            "m2_8": core(modulation_norm(&u, 8.0))?,
            "m2_p": core(modulation_norm(&u, p))?,
            "fourier_lebesgue_dual": core(fourier_lebesgue_norm(&u, p / (p - 1.0)))?,
            "block_orlicz": core(modulation_orlicz_norm(&phi, &u))?,
        });
        let path = self.write_json(None, json!({ "p": p, "gamma": gamma, "norms": norms }))?;
        say(format!(
            "norms: l2 {} m2_4 {} block_orlicz {}; wrote {}",
            norms["l2"], norms["m2_4"], norms["block_orlicz"], path.display()
        ));
        Ok(true)
    }

    fn cmd_evolve(&self) -> Result<bool, String> {
        let u0 = self.build_field()?;
        let cfg = self.evolution_config()?;
        let traj = splitstep_evolve(&u0, &cfg).map_err(|e| e.to_string())?;
        let (mass0, energy0) = mass_energy(&u0);
        let mut frames = Vec::with_capacity(traj.len());
        let mut plot = format!(
            "# config_hash={}\n# split-step trajectory: mass and energy per frame\n\
             # gnuplot> plot 'evolve_plot.dat' u 1:2 w l t 'mass', '' u 1:3 w l t 'energy'\n\
             # t mass energy\n",
            self.hash
        );
        let (mut mass_drift, mut energy_drift) = (0.0f64, 0.0f64);
        for k in 0..traj.len() {
            let t = traj.time(k);
            let (mass, energy) = mass_energy(traj.frame(k));
            mass_drift = mass_drift.max((mass - mass0).abs());
            energy_drift = energy_drift.max((energy - energy0).abs());
            frames.push(json!({ "t": t, "mass": mass, "energy": energy }));
            plot.push_str(&format!("{t} {mass} {energy}\n"));
        }
        self.write_text(&format!("{}_plot.dat", self.file_stem()), &plot)?;
        let passed = traj.is_finite();
        let final_field = traj.frames().last().expect("trajectory has frames");
        self.write_json(
            Some(passed),
            json!({
                "frames": frames,
                "mass_drift": mass_drift,
                "energy_drift": energy_drift,
                "final_field": final_field.to_json(),
            }),
        )?;
        say(format!(
            "evolve: {} frames to t={}, mass drift {mass_drift:e}, energy drift {energy_drift:e}",
            traj.len(),
            traj.time(traj.len() - 1)
        ));
        Ok(passed)
    }

    fn cmd_picard(&self) -> Result<bool, String> {
        let mut u0 = self.build_field()?;
        let p = self.cfg.f64_key("norm.p")?;
        let small = self.cfg.f64_key("picard.small")?;
        if small > 0.0 {
            let current = modulation_norm(&u0, p).map_err(|e| e.to_string())?;
            if current > 0.0 {
                u0 = u0.scale(Complex64::from(small / current));
            }
        }
        let cfg = self.evolution_config()?;
        let iters = self.cfg.usize_key("picard.iters")?;
        let outcome = picard_iterate(&u0, &cfg, iters, &PicardMonitor::Modulation { p })
            .map_err(|e| e.to_string())?;
        let report = &outcome.report;
        let contracting = report.ratios.len() >= 2 && report.ratios[1..].iter().all(|r| *r < 1.0);
        let mut plot = format!(
            "# config_hash={}\n# Picard differences D_n and ratios D_n/D_(n-1) (ratio 0 for n=0)\n\
             # gnuplot> set logscale y; plot 'picard_plot.dat' u 1:2 w lp t 'D_n'\n\
             # n difference ratio\n",
            self.hash
        );
        for (k, d) in report.differences.iter().enumerate() {
            let ratio = if k == 0 { 0.0 } else { report.ratios[k - 1] };
            plot.push_str(&format!("{k} {d} {ratio}\n"));
        }
        self.write_text(&format!("{}_plot.dat", self.file_stem()), &plot)?;
        let passed = contracting && !report.diverged;
        self.write_json(
            Some(passed),
            json!({
                "monitor_p": p,
                "report": serde_json::to_value(report).map_err(|e| e.to_string())?,
                "contracting": contracting,
            }),
        )?;
        say(format!(
            "picard: {} iterates, diverged {}, last ratio {:?}",
            report.iterate_norms.len(),
            report.diverged,
            report.ratios.last()
        ));
        Ok(passed)
    }

    fn cmd_verify_strichartz(&self) -> Result<bool, String> {
        let family = self
            .family()?
            .ok_or_else(|| "verify-strichartz needs nonzero data".to_string())?;
        let n = self.cfg.usize_key("grid.N")?;
        let m = self.cfg.usize_key("grid.m")?;
        let resolutions = [(n, m), (2 * n, m), (2 * n, 2 * m)];
        let report = verify_strichartz(
            &family,
            self.cfg.f64_key("strichartz.p")?,
            self.cfg.f64_key("strichartz.q")?,
            &resolutions,
            self.cfg.u64_key("seed")?,
        )
        .map_err(|e| e.to_string())?;
        self.finish_report(&report, json!({}))
    }

    fn cmd_verify_bilinear(&self) -> Result<bool, String> {
        let grid = self.grid()?;
        let seed = self.cfg.u64_key("seed")?;
        let u_band = DataFamily::FlatBand {
            lo: self.cfg.f64_key("bilinear.u_lo")?,
            hi: self.cfg.f64_key("bilinear.u_hi")?,
        };
        let v_band = DataFamily::FlatBand {
            lo: self.cfg.f64_key("bilinear.v_lo")?,
            hi: self.cfg.f64_key("bilinear.v_hi")?,
        };
        let u0 = generate_data(&u_band, grid, seed).map_err(|e| e.to_string())?;
        let v0 = generate_data(&v_band, grid, seed).map_err(|e| e.to_string())?;
        let half = grid.n() as i64 / 2;
        let js: Vec<i64> = (-64i64..=64).filter(|j| j.abs() < half).collect();
        let kernel_error =
            verify_bilinear_kernel(&u0, &v0, &[0.0, 0.7], &js).map_err(|e| e.to_string())?;
        let window = self.cfg.f64_key("bilinear.window")?;
        let identity =
            bilinear_identity_check(&u0, &v0, self.cfg.f64_key("bilinear.identity_lambda")?, window)
                .map_err(|e| e.to_string())?;
        let report =
            verify_bilinear_inequality(&u0, &v0, &self.cfg.f64_list("bilinear.lambdas")?, window)
                .map_err(|e| e.to_string())?;
        let identity_ok = identity.converged;
        let kernel_ok = kernel_error <= 1e-6;
        let extra = json!({
            "kernel_error": kernel_error,
            "kernel_ok": kernel_ok,
            "identity": {
                "lambda": identity.lambda,
                "windows": identity.windows,
                "windowed": identity.windowed,
                "reference": identity.reference,
                "converged": identity.converged,
            },
        });
        let sweep_ok = self.finish_report(&report, extra)?;
        say(format!("verify-bilinear: kernel error {kernel_error:e}, identity converged {identity_ok}"));
        Ok(sweep_ok && kernel_ok && identity_ok)
    }

    fn cmd_verify_restriction(&self) -> Result<bool, String> {
        let data = match self.cfg.str_key("restriction.data") {
            "flat" => RestrictionData::Flat,
            "random_phase" => RestrictionData::RandomPhase,
            other => {
                return Err(format!(
                    "restriction.data must be flat or random_phase, got `{other}`"
                ))
            }
        };
        let report = verify_restriction_l4(
            data,
            &self.cfg.usize_list("restriction.blocks")?,
            self.cfg.usize_key("grid.m")?,
            self.cfg.u64_key("seed")?,
        )
        .map_err(|e| e.to_string())?;
        self.finish_report(&report, json!({}))
    }

    fn cmd_verify_embeddings(&self) -> Result<bool, String> {
        let report = verify_embeddings(
            self.cfg.usize_key("grid.N")?,
            self.cfg.usize_key("grid.m")?,
            self.cfg.usize_key("embeddings.trials")?,
            self.cfg.u64_key("seed")?,
        )
        .map_err(|e| e.to_string())?;
        self.finish_report(&report, json!({}))
    }

    fn cmd_verify_scaling(&self) -> Result<bool, String> {
        let u0 = self.build_field()?;
        let gamma = self.cfg.f64_key("orlicz.gamma")?;
        let lambdas: Vec<f64> = self
            .cfg
            .f64_list("scaling.levels")?
            .iter()
            .map(|level| level.exp())
            .collect();
        let report = verify_scaling_law(&u0, gamma, &lambdas).map_err(|e| e.to_string())?;
        let sharpness = sharpness_log_ratio(2.0, 8.0).map_err(|e| e.to_string())?;
        let sharp_ok = (0.25..=4.0).contains(&sharpness);
        let sweep_ok = self.finish_report(
            &report,
            json!({ "sharpness_log_ratio": sharpness, "sharpness_ok": sharp_ok }),
        )?;
        Ok(sweep_ok && sharp_ok)
    }

    fn cmd_verify_persistence(&self) -> Result<bool, String> {
        let mut u0 = self.build_field()?;
        let gamma = self.cfg.f64_key("orlicz.gamma")?;
        let target = self.cfg.f64_key("persistence.size")?;
        if target > 0.0 {
            let phi = lab_young(gamma).map_err(|e| e.to_string())?;
            let current = modulation_orlicz_norm(&phi, &u0).map_err(|e| e.to_string())?;
            if current > 0.0 {
                u0 = u0.scale(Complex64::from(target / current));
            }
        }
        let cfg = self.evolution_config()?;
        let report = verify_norm_persistence(&u0, gamma, &cfg).map_err(|e| e.to_string())?;
        self.finish_report(&report, json!({ "target_size": target }))
    }

    fn cmd_vpnorm(&self) -> Result<bool, String> {
        let u0 = self.build_field()?;
        let cfg = self.evolution_config()?;
        let traj = splitstep_evolve(&u0, &cfg).map_err(|e| e.to_string())?;
        let p = self.cfg.f64_key("vpnorm.p")?;
        let open = adapted_path(&traj, false);
        let closed = adapted_path(&traj, true);
        let vp = vp_norm(&open, p).map_err(|e| e.to_string())?;
        let vp_tail = vp_norm(&closed, p).map_err(|e| e.to_string())?;
        let partition_times: Vec<f64> = vp.partition.iter().map(|&k| open.times()[k]).collect();
        // The O(2^n) reference is only affordable on short paths; when it
        // runs, the dynamic program must reproduce it exactly.
        let brute = if open.len() <= 13 {
            Some(vp_norm_bruteforce(&open, p).map_err(|e| e.to_string())?)
        } else {
            None
        };
        let brute_ok = brute.map(|b| (b - vp.value).abs() <= 1e-12 * b.max(1.0));
        let mut plot = format!(
            "# config_hash={}\n# adapted-path increments |u~(t_k) - u~(t_(k-1))|_L2\n\
             # gnuplot> plot 'vpnorm_plot.dat' u 1:2 w lp t 'increment'\n\
             # t increment cumulative\n",
            self.hash
        );
        let mut cumulative = 0.0f64;
        for k in 1..open.len() {
            let step = open
                .value(k)
                .sub(open.value(k - 1))
                .map_err(|e| e.to_string())?
                .l2_norm();
            cumulative += step;
            plot.push_str(&format!("{} {step} {cumulative}\n", open.times()[k]));
        }
        self.write_text(&format!("{}_plot.dat", self.file_stem()), &plot)?;
        let passed = vp.value.is_finite() && brute_ok.unwrap_or(true);
        self.write_json(
            Some(passed),
            json!({
                "p": p,
                "value": vp.value,
                "value_tail_to_zero": vp_tail.value,
                "samples": open.len(),
                "partition_times": partition_times,
                "bruteforce": brute,
            }),
        )?;
        say(format!(
            "vpnorm: V^{p} = {} over {} samples ({} with terminal jump)",
            vp.value,
            open.len(),
            vp_tail.value
        ));
        Ok(passed)
    }

    fn cmd_orlicz_conjugate(&self) -> Result<bool, String> {
        let gamma = self.cfg.f64_key("orlicz.gamma")?;
        if !(gamma >= 1.0) {
            return Err(format!("orlicz.gamma must be at least 1, got {gamma}"));
        }
        let correction = choose_correction_constant(1.0 / (2.0 * gamma), 0.5, 10.0)
            .map_err(|e| e.to_string())?;
        let phi = YoungFunction::sqrt_variant(gamma, correction).map_err(|e| e.to_string())?;
        let table = ConjugateTable::new(&phi);
        let lo = self.cfg.f64_key("conjugate.t_lo")?;
        let hi = self.cfg.f64_key("conjugate.t_hi")?;
        let points = self.cfg.usize_key("conjugate.points")?;
        if !(lo > 0.0 && lo < hi && hi < 1.0) {
            return Err(format!(
                "conjugate range needs 0 < t_lo < t_hi < 1, got [{lo}, {hi}]"
            ));
        }
        if points < 2 {
            return Err(format!("conjugate.points must be at least 2, got {points}"));
        }
        let stamp = format!("# config_hash={}\n", self.hash);
        let mut csv = stamp.clone()
            + &format!("# conjugate of sqrt-composed profile, gamma={gamma}, correction={correction}\n")
            + "x,measured,reference,ratio\n";
        let mut plot = stamp
            + &format!(
                "# conjugate function vs small-argument law t/ln^{}(1/t)\n\
                 # gnuplot> set logscale xy; plot 'orlicz_conjugate_plot.dat' u 1:2 w lp t 'conjugate', '' u 1:3 w l t 'law'\n\
                 # x y fit\n",
                2.0 * gamma
            );
        let mut rows = Vec::with_capacity(points);
        let (mut ratio_min, mut ratio_max) = (f64::MAX, f64::MIN);
        for k in 0..points {
            let frac = k as f64 / (points - 1) as f64;
            let t = lo * (hi / lo).powf(frac);
            let value = table.eval(t).map_err(|e| e.to_string())?;
            let reference = t / (1.0 / t).ln().powf(2.0 * gamma);
            let ratio = value / reference;
            ratio_min = ratio_min.min(ratio);
            ratio_max = ratio_max.max(ratio);
            csv.push_str(&format!("{t},{value},{reference},{ratio}\n"));
            plot.push_str(&format!("{t} {value} {reference}\n"));
            rows.push(json!({ "t": t, "conjugate": value, "reference": reference, "ratio": ratio }));
        }
        self.write_text(&format!("{}_sweep.csv", self.file_stem()), &csv)?;
        self.write_text(&format!("{}_plot.dat", self.file_stem()), &plot)?;
        let passed = ratio_min.is_finite() && ratio_max.is_finite() && ratio_min > 0.0;
        self.write_json(
            Some(passed),
            json!({
                "gamma": gamma,
                "correction": correction,
                "rows": rows,
                "ratio_min": ratio_min,
                "ratio_max": ratio_max,
            }),
        )?;
        say(format!(
            "orlicz-conjugate: {points} points on [{lo:e}, {hi:e}], ratio band [{ratio_min:e}, {ratio_max:e}]"
        ));
        Ok(passed)
    }

    fn cmd_acceptance(&self) -> Result<bool, String> {
        let seed = self.cfg.u64_key("seed")?;
        let results = acceptance::run_all(seed);
        for result in &results {
            say(result.line());
        }
        let passed = results.iter().all(|r| r.passed);
        let value = serde_json::to_value(&results).map_err(|e| e.to_string())?;
        self.write_json(Some(passed), json!({ "seed": seed, "criteria": value }))?;
        say(format!(
            "acceptance: {}/{} criteria passed",
            results.iter().filter(|r| r.passed).count(),
            results.len()
        ));
        Ok(passed)
    }
}
