//! Exit-code and interface contracts of the `autdim` binary.

use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_autdim")
}

fn tmp_out(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("autdim-cli-tests").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn unknown_command_exits_two() {
    let out = Command::new(bin()).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_domain_exits_two() {
    let dir = tmp_out("bad-domain");
    let out = Command::new(bin())
        .args([
            "metric", "--domain", "nonsense", "--from", "0", "--to", "0.5",
        ])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn metric_prints_disk_distance() {
    let dir = tmp_out("metric");
    let out = Command::new(bin())
        .args([
            "metric", "--domain", "unitdisk", "--from", "0", "--to", "0.5",
        ])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("0.549306"), "stdout: {stdout}");
    let report = std::fs::read_to_string(dir.join("report.json")).unwrap();
    assert!(report.contains("\"schemaVersion\": 1"));
    assert!(report.contains("\"witnessDegree\""));
    assert!(dir.join("witness.csv").exists());
}

#[test]
fn verify_lemmas_exits_zero_and_writes_report() {
    let dir = tmp_out("lemmas");
    let out = Command::new(bin())
        .args([
            "verify-lemmas",
            "--seed",
            "7",
            "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = std::fs::read_to_string(dir.join("report.json")).unwrap();
    for lemma in [
        "\"Id\"",
        "\"De\"",
        "\"One\"",
        "\"Ne\"",
        "\"MDeriv\"",
        "\"Gram\"",
    ] {
        assert!(report.contains(lemma), "missing {lemma}");
    }
    assert!(!report.contains("Failed"));
    assert!(dir.join("lemmas.csv").exists());
}

#[test]
fn run_config_mirrors_flags() {
    let dir = tmp_out("config");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("experiment.json");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"command":"hausdorff","j":"3..5","density":0.02,"out":"{}"}}"#,
            dir.join("res").display()
        ),
    )
    .unwrap();
    let out = Command::new(bin())
        .args(["run", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("res").join("hausdorff.csv")).unwrap();
    assert!(csv.starts_with("j,hausdorff"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn semicontinuity_family_table() {
    let dir = tmp_out("family");
    let out = Command::new(bin())
        .args([
            "dim-estimate",
            "--domain",
            "unitdisk",
            "--family",
            "ellipse:0.5,0.2,0.1",
        ])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("semicontinuity.csv")).unwrap();
    assert!(csv.starts_with("param,hausdorff,dim,sigma_min,gapRatio"));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("semicontinuity holds"), "stdout: {stdout}");
}

#[test]
fn flow_escape_reported() {
    let dir = tmp_out("flow-escape");
    let out = Command::new(bin())
        .args([
            "flow", "--domain", "unitdisk", "--field", "const:1", "--z", "0.9", "--t", "1",
        ])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("escaped at t = 0.1000"), "stdout: {stdout}");
    let report = std::fs::read_to_string(dir.join("report.json")).unwrap();
    assert!(report.contains("\"escapeTime\""));
}
