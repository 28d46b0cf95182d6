//! End-to-end tests of the `qembed` binary: exit codes, artifact
//! determinism, and manifest checksums.

use std::path::Path;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn qembed(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qembed"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn missing_seed_is_a_validation_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qembed(&["capacity", "--fidelity", "0.9"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("master_seed"), "stderr: {stderr}");
}

#[test]
fn bad_config_field_is_named() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("config.json");
    std::fs::write(&config, r#"{"master_seed": 1, "train": {"batchsize": 3}}"#).unwrap();
    let out = qembed(
        &["--config", config.to_str().unwrap(), "train"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("batchsize"), "stderr: {stderr}");
}

#[test]
fn capacity_results_and_domain_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qembed(
        &["--seed", "0", "--out", "cap", "capacity", "--fidelity", "0.9"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("= 20"));
    let report = std::fs::read_to_string(tmp.path().join("cap/capacity.json")).unwrap();
    assert!(report.contains("\"max_points\": 20"));

    let out = qembed(
        &["--seed", "0", "--out", "cap", "capacity", "--classes", "2"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("3.141592653590"));

    // F = 1 is outside the bound's domain.
    let out = qembed(
        &["--seed", "0", "--out", "cap", "capacity", "--fidelity", "1"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    // Exactly one of the two selectors must be given.
    let out = qembed(&["--seed", "0", "--out", "cap", "capacity"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn train_is_deterministic_and_improves() {
    let tmp = tempfile::tempdir().unwrap();
    for dir in ["a", "b"] {
        let out = qembed(&["--seed", "17", "--out", dir, "train"], tmp.path());
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(tmp.path().join("a/params.json")).unwrap();
    let b = std::fs::read(tmp.path().join("b/params.json")).unwrap();
    assert_eq!(a, b, "same seed must give byte-identical parameters");

    // Final cost below initial cost on the persisted curve.
    let curve = std::fs::read_to_string(tmp.path().join("a/cost_curve.csv")).unwrap();
    let costs: Vec<f64> = curve
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(costs.last().unwrap() < &costs[0]);

    // A different seed changes the artifacts.
    let out = qembed(&["--seed", "18", "--out", "c", "train"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let c = std::fs::read(tmp.path().join("c/params.json")).unwrap();
    assert_ne!(a, c);
}

#[test]
fn manifest_checksums_match_disk() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qembed(
        &["--seed", "17", "--out", "g", "gram", "--mode", "atomic"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(tmp.path().join("g/run_manifest.json")).unwrap(),
    )
    .unwrap();
    let artifacts = manifest["artifacts"].as_array().unwrap();
    assert!(artifacts.len() >= 4); // config + csv + pgm + metrics
    for entry in artifacts {
        let name = entry["path"].as_str().unwrap();
        let bytes = std::fs::read(tmp.path().join("g").join(name)).unwrap();
        assert_eq!(
            entry["sha256"].as_str().unwrap(),
            sha256_hex(&bytes),
            "checksum mismatch for {name}"
        );
        assert_eq!(entry["bytes"].as_u64().unwrap(), bytes.len() as u64);
    }

    // The heatmap is a valid 10x10 PGM.
    let pgm = std::fs::read(tmp.path().join("g/gram_atomic.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n10 10\n255\n"));
    assert_eq!(pgm.len(), b"P5\n10 10\n255\n".len() + 100);
}

#[test]
fn flag_overrides_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("config.json");
    std::fs::write(&config, r#"{"master_seed": 17, "output_dir": "from_file"}"#).unwrap();
    let out = qembed(
        &[
            "--config",
            config.to_str().unwrap(),
            "--out",
            "from_flag",
            "dataset",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(tmp.path().join("from_flag/dataset.csv").exists());
    assert!(!tmp.path().join("from_file").exists());
}

#[test]
fn gram_shots_mode_is_noisier_but_separates() {
    let tmp = tempfile::tempdir().unwrap();
    for mode in ["exact", "shots"] {
        let out = qembed(
            &["--seed", "17", "--out", mode, "gram", "--mode", mode],
            tmp.path(),
        );
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let metrics = |dir: &str, name: &str| -> serde_json::Value {
        serde_json::from_str(
            &std::fs::read_to_string(tmp.path().join(dir).join(name)).unwrap(),
        )
        .unwrap()
    };
    let exact = metrics("exact", "cluster_metrics_exact.json");
    let shots = metrics("shots", "cluster_metrics_shots.json");
    assert!(exact["separation_gap"].as_f64().unwrap() >= 0.5);
    assert!(shots["separation_gap"].as_f64().unwrap() > 0.0);

    // Shot noise must actually perturb the matrix.
    let g_exact = std::fs::read_to_string(tmp.path().join("exact/gram_exact.csv")).unwrap();
    let g_shots = std::fs::read_to_string(tmp.path().join("shots/gram_shots.csv")).unwrap();
    assert_ne!(g_exact, g_shots);
}

#[test]
fn photonic_compile_notes_fallback() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qembed(
        &[
            "--seed", "17", "--out", "p", "compile", "--backend", "photonic", "--source",
            "reference",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let records: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(tmp.path().join("p/plates_photonic.json")).unwrap(),
    )
    .unwrap();
    let records = records.as_array().unwrap();
    assert_eq!(records.len(), 10);
    for r in records {
        assert!(r["compiler"].is_string());
        assert!(r["residual"].as_f64().unwrap() <= 1e-9);
    }
}

#[test]
fn compile_atomic_trained_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qembed(
        &["--seed", "17", "--out", "a", "compile", "--backend", "atomic"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let records: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(tmp.path().join("a/pulses_atomic.json")).unwrap(),
    )
    .unwrap();
    let records = records.as_array().unwrap();
    assert_eq!(records.len(), 10);
    for r in records {
        assert!(r["infidelity"].as_f64().unwrap() <= 1e-6);
        assert_eq!(r["converged"].as_bool(), Some(true));
    }
}

#[test]
fn simulate_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    for dir in ["s1", "s2"] {
        let out = qembed(
            &["--seed", "5", "--out", dir, "simulate", "--platform", "photonic"],
            tmp.path(),
        );
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(tmp.path().join("s1/tomography_photonic.json")).unwrap();
    let b = std::fs::read(tmp.path().join("s2/tomography_photonic.json")).unwrap();
    assert_eq!(a, b);
}
