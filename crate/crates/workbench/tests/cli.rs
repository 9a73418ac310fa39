use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use workbench::cli::main_with;

fn workbench(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_workbench"));
    cmd.args(args).env_remove(workbench::cache::CACHE_DIR_ENV);
    if let Some(dir) = cache {
        cmd.env(workbench::cache::CACHE_DIR_ENV, dir);
    }
    cmd.output().expect("runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn t_element_as_json() {
    let out = workbench(&["dga-t", "a0;a1,a2;a3", "--format", "json"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verb"], "dga-t");
    assert_eq!(v["result"].as_array().unwrap().len(), 3);
    assert!(v["result"].as_array().unwrap().iter().all(|t| t["coefficient"] == "1"));
}

#[test]
fn binary_theory_sweep_passes() {
    let out = workbench(&["cycles-verify", "--theory", "binary", "--max-n", "3"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = workbench(&["cycles-verify", "--theory", "binary:0,1", "--max-n", "3", "--format", "json"], None);
    assert_eq!(json(&out)["result"]["sequences"], 14);
}

#[test]
fn verification_failure_reports_a_counterexample() {
    let out = workbench(&["cycles-verify", "--theory", "binary", "--negated-back"], None);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("first counterexample"), "{text}");
}

#[test]
fn dilogarithm_at_one() {
    let out = workbench(&["periods-li", "2", "--z", "1", "--format", "json"], None);
    assert_eq!(out.status.code(), Some(0));
    let re = json(&out)["result"]["re"].as_f64().unwrap();
    assert!((re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-10);
    assert!(String::from_utf8_lossy(&workbench(&["periods-li", "2", "--z", "1"], None).stdout).contains("1.64493406"));
}

#[test]
fn exit_statuses() {
    let code = |args: &[&str]| workbench(args, None).status.code();
    assert_eq!(code(&["dga-t", "0;;1"]), Some(2));
    assert_eq!(code(&["dga-t", "0;1,(;1"]), Some(2));
    assert_eq!(code(&["no-such-verb"]), Some(2));
    assert_eq!(code(&["cycles-rho", "0;1,1;w"]), Some(3));
    assert_eq!(code(&["cycles-rho", "z;0,2;w", "--theory", "binary"]), Some(3));
    assert_eq!(code(&["periods-li", "1", "--z", "1"]), Some(3));
    assert_eq!(code(&["periods-iter", "0,1", "--no-tangential"]), Some(3));
    assert_eq!(code(&["hodge-lambda", "0;0,1;1", "--theory", "binary"]), Some(3));
    assert_eq!(code(&["suite", "12"]), Some(2));
    assert_eq!(code(&["hodge-z", "0;1,z,1;w"]), Some(0));
}

#[test]
fn help_goes_to_stdout() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(main_with(["workbench", "--help"], &mut out, &mut err), 0);
    let text = String::from_utf8(out).unwrap();
    for verb in ["dga-d", "dga-coproduct", "dga-reduce", "dga-regularize", "comodule-check", "periods-phi", "hodge-lambda", "suite"] {
        assert!(text.contains(verb), "{verb}");
    }
}

#[test]
fn json_is_deterministic() {
    for args in [
        ["dga-coproduct", "0;1,z,1;w", "--format", "json"],
        ["hodge-z", "0;1,z;w", "--format", "json"],
        ["cycles-rho", "0;1,z;w", "--format", "json"],
    ] {
        let a = workbench(&args, None);
        let b = workbench(&args, None);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn cache_hits_match_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["periods-phi", "--depth", "2", "--format", "json"];
    let fresh = workbench(&args, None);
    let first = workbench(&args, Some(dir.path()));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = workbench(&args, Some(dir.path()));
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    let flag = dir.path().join("flagged");
    let out = workbench(&["dga-t", "0;1;z", "--cache-dir", flag.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(&flag).unwrap().count(), 1);
}

#[test]
fn cached_report_is_served_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["dga-d", "0;1,z;w", "--format", "json"];
    workbench(&args, Some(dir.path()));
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut stored: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    stored["text"] = Value::String("marker".into());
    std::fs::write(&file, serde_json::to_string(&stored).unwrap()).unwrap();
    let out = workbench(&["dga-d", "0;1,z;w"], Some(dir.path()));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "marker\n");
}

#[test]
fn verbs_run() {
    let ok = |args: &[&str]| {
        let out = workbench(args, None);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap()
    };
    assert!(ok(&["dga-d", "0;1,z;w"]).contains("d(0;1,z;w)"));
    assert!(ok(&["dga-reduce", "0;1,0;1", "--letters", "0,1"]).contains("T~(0;1,0;1)"));
    assert!(ok(&["dga-regularize", "0;0,1;1"]).contains("re-expansion agrees"));
    assert!(!ok(&["comodule-check", "--start", "0", "--end", "z", "--depth", "3"]).is_empty());
    assert!(ok(&["cycles-rho", "0;1,z;w", "--k", "2"]).contains("rho_2"));
    let v: Value = serde_json::from_str(&ok(&["periods-iter", "1,0", "--format", "json"])).unwrap();
    assert!((v["result"]["re"].as_f64().unwrap() + std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-9);
    let v: Value = serde_json::from_str(&ok(&["hodge-lambda", "0;1;z", "--values", "z=0.5", "--format", "json"])).unwrap();
    let im = v["result"]["terms"][0]["scalar"]["im"].as_f64().unwrap();
    assert!((im + 0.5f64.ln() / (2.0 * std::f64::consts::PI)).abs() < 1e-12);
    assert!(ok(&["suite", "11"]).starts_with("[PASS] 11."));
    assert!(ok(&["suite", "all", "--max-n", "1"]).lines().count() == 11);
}
