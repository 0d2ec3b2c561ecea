use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_benney"))
}

fn preset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("presets").join(name)
}

#[test]
fn conservation_run_exits_zero_and_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run", preset("conservation.toml").to_str().unwrap(), "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["series.csv", "series_aux.csv", "report.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let check = bin().arg("check").arg(dir.path().join("series.csv")).output().unwrap();
    assert_eq!(check.status.code(), Some(0));
    let printed: serde_json::Value = serde_json::from_slice(&check.stdout).unwrap();
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(printed, report["drift"]);
}

#[test]
fn blowup_run_exits_two_with_t_star() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run", preset("blowup.toml").to_str().unwrap(), "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert!(report["t_star"].as_f64().unwrap() < 2.0);
    assert_eq!(report["status"], "suspected_blowup");
}

#[test]
fn boundstate_at_the_lambda_boundary_is_a_validation_error() {
    let out = bin()
        .args(["boundstate", "--a", "1", "--b", "1", "--sstar", "1", "--mustar", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda"));
}

#[test]
fn boundstate_table_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("profile.csv");
    let out = bin()
        .args([
            "boundstate",
            "--a",
            "1",
            "--b",
            "-1",
            "--sstar",
            "2",
            "--mustar",
            "1",
            "--table",
        ])
        .arg(&table)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let params: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((params["alpha"].as_f64().unwrap() - 0.9428090416).abs() < 1e-9);
    let text = std::fs::read_to_string(table).unwrap();
    assert!(text.starts_with("x,r,r_prime,w\n"));
    assert_eq!(text.lines().count(), 402);
}

#[test]
fn invalid_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(
        &path,
        "scenario = \"conservation\"\n[grid]\nL = 10.0\nN = 64\n[physics]\na = -1.0\nb = 1.0\nepsilon = 0.0\n",
    )
    .unwrap();
    let out = bin().arg("run").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("physics.a must be > 0"));
}

#[test]
fn missing_files_exit_three() {
    let out = bin().args(["run", "/nonexistent/config.toml"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin().args(["check", "/nonexistent/series.csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_subcommand_overrides_the_list() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "sweep",
            preset("viscosity_sweep.toml").to_str().unwrap(),
            "--eps",
            "0.1,0.05",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("series_eps1.csv").exists());
    assert!(!dir.path().join("series_eps2.csv").exists());
}
