//! End-to-end checks of the binary: exit codes, config validation,
//! deterministic reports, and CSV extraction.

use std::path::Path;
use std::process::{Command, Output};

fn bfcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bfcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_to(dir: &Path, name: &str, extra: &[&str]) -> std::path::PathBuf {
    let out = dir.join(name);
    let mut args = vec![
        "run",
        "--suite",
        "subordination",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let o = bfcalc(&args);
    assert!(
        o.status.success(),
        "run failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    out
}

#[test]
fn invalid_alpha_exits_2_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"psi": {"kind": "power", "alpha": 1.5}}"#).unwrap();
    let out = dir.path().join("r.json");
    let o = bfcalc(&[
        "run",
        "--suite",
        "scalar-inequalities",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("alpha out of (0, 1]"), "stderr: {err}");
    assert!(!out.exists());
}

#[test]
fn unknown_suite_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = bfcalc(&["run", "--suite", "nope", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn malformed_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"points": "many"}"#).unwrap();
    let o = bfcalc(&[
        "run",
        "--suite",
        "cm-appendix",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("r.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_to(dir.path(), "a.json", &[]);
    let b = run_to(dir.path(), "b.json", &[]);
    let ba = std::fs::read(&a).unwrap();
    let bb = std::fs::read(&b).unwrap();
    assert_eq!(ba, bb, "same seed must give identical bytes");
    assert!(String::from_utf8_lossy(&ba).contains("\"schema\": \"1\""));
}

#[test]
fn report_content_reflects_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_to(dir.path(), "a.json", &[]);
    let text = std::fs::read_to_string(&a).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["suite"], "subordination");
    assert_eq!(v["seed"], 3);
    assert_eq!(v["summary"]["fail_count"], 0);
    assert!(v["checks"].as_array().unwrap().len() >= 5);
    // nothing time- or host-dependent may leak into the file
    for key in ["time", "date", "host", "duration"] {
        assert!(!text.contains(key), "found '{key}' in report");
    }
}

#[test]
fn plot_extracts_csv_and_rejects_unknown_kind() {
    let dir = tempfile::tempdir().unwrap();
    let rep = run_to(dir.path(), "r.json", &[]);
    let csv = dir.path().join("d.csv");
    let o = bfcalc(&[
        "plot",
        "--report",
        rep.to_str().unwrap(),
        "--kind",
        "density-profile",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,density"));
    let first = lines.next().unwrap();
    assert_eq!(first.split(',').count(), 2);
    assert!(first.split(',').all(|c| c.parse::<f64>().is_ok()));
    assert_eq!(text.lines().count(), 41);

    let o = bfcalc(&[
        "plot",
        "--report",
        rep.to_str().unwrap(),
        "--kind",
        "no-such-table",
        "--out",
        dir.path().join("x.csv").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("available"));
}

#[test]
fn fixed_psi_config_drives_the_scalar_suite() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"psi": {"kind": "levy", "a": 0.1, "b": 0.2, "atoms": [[1.0, 0.5]],
            "tails": [{"coeff": 0.3, "power": -0.5, "rate": 1.0, "cut": 1.0}]},
            "points": 128}"#,
    )
    .unwrap();
    let out = dir.path().join("r.json");
    let o = bfcalc(&[
        "run",
        "--suite",
        "scalar-inequalities",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["summary"]["fail_count"], 0);
    assert_eq!(v["config"]["psi"]["kind"], "levy");
}

#[test]
fn tol_scale_must_be_positive() {
    let dir = tempfile::tempdir().unwrap();
    let o = bfcalc(&[
        "run",
        "--suite",
        "cm-appendix",
        "--tol-scale",
        "-1.0",
        "--out",
        dir.path().join("r.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
