use std::path::PathBuf;
use std::process::{Command, Output};

use qspread::config::Config;
use qspread::format::RepDocument;
use serde_json::Value;

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn qspread(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspread")).args(args).env_remove("QSPREAD_CONFIG").output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn config(name: &str) -> String {
    workspace().join("configs").join(name).display().to_string()
}

#[test]
fn enumerate_reports_the_count() {
    let out = qspread(&["nc", "enumerate", "--m", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = lines(&out);
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["params"]["count"], 14);
    assert_eq!(reports[0]["status"], "pass");
    assert_eq!(reports[0]["max_residual"], "exact-zero");
}

#[test]
fn mobius_reports_bottom_top() {
    let reports = lines(&qspread(&["nc", "mobius", "--m", "5"]));
    assert_eq!(reports[0]["params"]["mu_bottom_top"], 14);
    assert_eq!(reports[0]["params"]["elements"], 42);
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["nc", "enumerate", "--m", "4", "--bogus"][..], &["nc", "frob"], &["wg", "psi", "--k", "2"], &["qperm", "magic"]] {
        assert_eq!(qspread(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(qspread(&["--help"]).status.code(), Some(0));
}

#[test]
fn unreadable_inputs_exit_two() {
    assert_eq!(qspread(&["inv", "exchangeable", "--config", "/nonexistent/x.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"invariance": {"unknown": 1}}"#).unwrap();
    assert_eq!(qspread(&["inv", "exchangeable", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn broken_law_fails_with_witness() {
    let out = qspread(&["inv", "exchangeable", "--config", &config("broken.json")]);
    assert_eq!(out.status.code(), Some(1));
    let reports = lines(&out);
    let failed: Vec<&Value> = reports.iter().filter(|r| r["status"] == "fail").collect();
    assert!(!failed.is_empty());
    for r in &failed {
        assert!(r["witness"]["j"].is_array() && r["witness"]["powers"].is_array(), "{r}");
    }
    for r in reports.iter().filter(|r| r["status"] == "pass") {
        assert!(r["witness"].is_null());
    }
}

#[test]
fn config_path_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qspread"))
        .args(["inv", "exchangeable"])
        .env("QSPREAD_CONFIG", config("broken.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_flag_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    let out = qspread(&["wg", "psi", "--k", "2", "--n", "2", "--mmax", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let strip = |text: &str| -> Vec<Value> {
        text.lines()
            .map(|l| {
                let mut v: Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("runtime_ms");
                v
            })
            .collect()
    };
    let stdout = qspread(&["wg", "psi", "--k", "2", "--n", "2", "--mmax", "3"]);
    assert_eq!(strip(&std::fs::read_to_string(&path).unwrap()), strip(&String::from_utf8(stdout.stdout).unwrap()));
}

#[test]
fn representation_files_roundtrip_through_checks() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.json");
    let ext = dir.path().join("ext.json");
    let r = rep.to_str().unwrap();
    assert_eq!(qspread(&["rep", "block", "--k", "2", "--n", "2", "--dim", "3", "--seed", "5", "--out", r]).status.code(), Some(0));
    let out = qspread(&["qis", "relations", "--k", "2", "--n", "4", "--rep", r]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(lines(&out)[0]["seed"], 5);
    let out = qspread(&["qis", "extend", "--k", "2", "--n", "4", "--rep", r, "--save", ext.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = qspread(&["qperm", "magic", "--rep", ext.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["params"]["n"], 4);
    // shape mismatch is an input error
    assert_eq!(qspread(&["qis", "relations", "--k", "2", "--n", "3", "--rep", r]).status.code(), Some(2));
}

#[test]
fn perturbed_representation_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let out = qspread(&["rep", "permutation", "--pi", "2,3,1"]);
    let mut doc: RepDocument = serde_json::from_slice(&out.stdout).unwrap();
    doc.generators[0][0][0][0] = [0.5, 0.0];
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = qspread(&["qperm", "magic", "--rep", path.to_str().unwrap(), "--tolerance", "1e-10"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &lines(&out)[0];
    assert_eq!(r["status"], "fail");
    assert!(r["witness"].is_object());
}

#[test]
fn classical_points_without_a_document() {
    let out = qspread(&["qis", "extend", "--k", "2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &lines(&out)[0];
    assert_eq!(r["params"]["points"], 6);
    assert_eq!(r["residuals"]["permutation_matrix"], "exact-zero");
    assert_eq!(qspread(&["qis", "relations", "--k", "2", "--n", "3", "--theta", "0.4"]).status.code(), Some(2));
}

#[test]
fn shipped_default_config_is_the_builtin_default() {
    let text = std::fs::read_to_string(config("default.json")).unwrap();
    assert_eq!(Config::from_json(&text).unwrap(), Config::default());
    assert!(Config::from_json(&std::fs::read_to_string(config("broken.json")).unwrap()).is_ok());
}

#[test]
fn in_process_run_matches_exit_codes() {
    assert_eq!(qspread::app::run(["qspread", "nc", "enumerate", "--m", "3", "--out", "/dev/null"]), 0);
    assert_eq!(qspread::app::run(["qspread", "nc", "enumerate", "--q"]), 2);
}
