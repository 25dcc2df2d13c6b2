//! End-to-end checks of the `nlslab` binary: the pinned trivial outputs,
//! rerun determinism, and the config-error contract.

use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlslab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn tempdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("nlslab_cli_{tag}_{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn norms_of_a_unit_flat_band_report_unit_modulation_norm() {
    let dir = tempdir("norms");
    let out = run(&dir, &["norms", "--data.family", "flat_band", "--data.lo", "0", "--data.hi", "1"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("runs/norms.json")).unwrap())
            .unwrap();
    assert_eq!(report["results"]["norms"]["m2_4"], serde_json::json!(1.0));
    assert_eq!(report["results"]["norms"]["l2"], serde_json::json!(1.0));
    assert!(report["config_hash"].as_str().unwrap().len() == 16);
}

#[test]
fn evolving_zero_data_yields_the_zero_trajectory() {
    let dir = tempdir("evolve");
    let out = run(&dir, &["evolve", "--data.family", "zero", "--time.M", "100"]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("runs/evolve.json")).unwrap())
            .unwrap();
    assert_eq!(report["results"]["mass_drift"], serde_json::json!(0.0));
    for frame in report["results"]["frames"].as_array().unwrap() {
        assert_eq!(frame["mass"], serde_json::json!(0.0));
    }
}

#[test]
fn reruns_with_identical_config_are_byte_identical() {
    let dir = tempdir("rerun");
    let args = ["verify-restriction", "--restriction.blocks", "4,8,16", "--grid.m", "4"];
    assert!(run(&dir, &args).status.success());
    let first_json = std::fs::read(dir.join("runs/verify_restriction.json")).unwrap();
    let first_csv = std::fs::read(dir.join("runs/verify_restriction_sweep.csv")).unwrap();
    assert!(run(&dir, &args).status.success());
    assert_eq!(first_json, std::fs::read(dir.join("runs/verify_restriction.json")).unwrap());
    assert_eq!(first_csv, std::fs::read(dir.join("runs/verify_restriction_sweep.csv")).unwrap());
}

#[test]
fn config_errors_exit_2_with_a_machine_readable_diagnostic() {
    let dir = tempdir("badcfg");
    let out = run(&dir, &["norms", "--grid.N", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    let diagnostic: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(diagnostic["error"], serde_json::json!("config"));
    assert!(diagnostic["detail"].as_str().unwrap().contains("power of two"));

    let out = run(&dir, &["norms", "--no.such.key", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&dir, &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn artifacts_embed_the_config_hash() {
    let dir = tempdir("hash");
    assert!(run(&dir, &["orlicz-conjugate", "--conjugate.points", "5"]).status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("runs/orlicz_conjugate.json")).unwrap())
            .unwrap();
    let hash = json["config_hash"].as_str().unwrap().to_string();
    for name in ["runs/orlicz_conjugate_sweep.csv", "runs/orlicz_conjugate_plot.dat"] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        assert!(
            text.starts_with(&format!("# config_hash={hash}\n")),
            "{name} is missing the hash stamp"
        );
    }
}
