use std::process::Command;

use serde_json::Value;

use matroid_charset_cli::run;

fn cli(args: &[&str]) -> (Value, i32) {
    let out = run(std::iter::once("matroid-charset").chain(args.iter().copied()));
    (out.result, out.exit_code)
}

fn write(dir: &tempfile::TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn envelope_fields() {
    let (v, code) = cli(&["field", "construct", "--p", "3", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["command"][0], "field");
    assert_eq!(v["payload"]["field"]["modulus"], serde_json::json!(["1", "0", "1"]));
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["gb", "check", "--primes", "5,7"]).1, 1);
    assert_eq!(cli(&["gb", "check", "--primes", "5,7"]).0["status"], "violation-report");
    let (v, code) = cli(&["field", "construct", "--p", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    assert_eq!(v["payload"]["code"], "not_prime");
    assert_eq!(cli(&["nonsense"]).1, 2);
    assert_eq!(cli(&["density", "greedy", "--alpha", "x", "--eps", "0.1"]).1, 2);
}

#[test]
fn missing_input_file_is_parse_error() {
    let (v, code) = cli(&["flock", "dual", "--flock", "/nonexistent/flock.json"]);
    assert_eq!(code, 2);
    assert_eq!(v["payload"]["code"], "parse_error");
}

#[test]
fn density_greedy_example() {
    let (v, code) = cli(&["density", "greedy", "--alpha", "0.5", "--eps", "0.05"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["primes"], serde_json::json!([7, 11, 13, 17, 19, 23, 29, 31]));
    assert_eq!(v["payload"]["product"]["exact"], "4437/8192");
}

#[test]
fn flock_pipeline_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let (built, code) = cli(&["flock", "build", "--rows", "1,0,1,1;0,1,1,2", "--p", "3"]);
    assert_eq!(code, 0);
    let base = write(&dir, "base.json", &built);
    let (v, code) = cli(&["flock", "check", "--flock", &base, "--radius", "1", "--duality"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["axioms"]["violations"], serde_json::json!([]));

    let (support, _) = cli(&["flock", "support", "--flock", &base, "--radius", "1"]);
    let m = write(&dir, "support.json", &support);
    let (u, _) = cli(&["matroid", "uniform", "--rank", "2", "--size", "4"]);
    assert_eq!(support["payload"]["matroid"]["bases"], u["payload"]["bases"]);
    let (circuits, _) = cli(&["matroid", "circuits", "--matroid", &m]);
    assert_eq!(circuits["payload"]["circuits"].as_array().unwrap().len(), 4);

    let (at, code) = cli(&["flock", "at", "--flock", &base, "--alpha", "-1,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(at["payload"]["alpha"], serde_json::json!([-1, 0, 0, 0]));
}

#[test]
fn stretched_check_reports_both_inequalities() {
    let dir = tempfile::tempdir().unwrap();
    let (built, _) = cli(&["flock", "build", "--rows", "1,1", "--p", "3", "--degree", "2"]);
    let base = write(&dir, "base.json", &built);
    let (stretched, code) = cli(&["flock", "stretch", "--flock", &base, "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stretched["payload"]["automorphism"], -1);
    let s = write(&dir, "stretched.json", &stretched);
    let (v, code) = cli(&["flock", "check", "--flock", &s, "--radius", "2"]);
    assert_eq!(code, 0);
    let st = &v["payload"]["stretch"];
    assert_eq!(st["deletion_inequality_failures"], serde_json::json!([]));
    assert!(!st["contraction_inequality_failures"].as_array().unwrap().is_empty());
    assert_eq!(cli(&["flock", "stretch", "--flock", &base, "--m", "3", "--psi", "1"]).1, 1);
}

#[test]
fn eqsys_witness_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (w, code) = cli(&["eqsys", "witness", "--family", "root_of_unity", "--n", "3", "--p", "2"]);
    assert_eq!(code, 0, "{w}");
    let path = write(&dir, "w.json", &w);
    let (v, code) = cli(&["eqsys", "verify", "--family", "root_of_unity", "--n", "3", "--assignment", &path]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["accepted"], true);
    let (v, code) = cli(&["eqsys", "witness", "--family", "root_of_unity", "--n", "3", "--p", "7"]);
    assert_eq!(code, 1);
    assert_eq!(v["payload"]["code"], "obstruction");
}

#[test]
fn eqsys_system_file_and_propagation() {
    let dir = tempfile::tempdir().unwrap();
    let (built, _) = cli(&["eqsys", "build", "--family", "phi_n", "--n", "4"]);
    let path = write(&dir, "system.json", &built);
    let (v, code) = cli(&["eqsys", "propagate", "--system", &path]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["values"]["w"], serde_json::json!("t^5+4t^3+3t^2"));
    let (v, _) = cli(&["eqsys", "validate", "--family", "root_of_unity", "--n", "3"]);
    assert_eq!(v["status"], "violation-report");
}

#[test]
fn brylawski_and_gb() {
    let (v, code) = cli(&["brylawski", "verify", "--primes", "5,7", "--mod", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["final_minor"], "35");
    assert_eq!(cli(&["brylawski", "verify", "--primes", "2", "--mod", "2"]).1, 1);
    let (v, _) = cli(&["brylawski", "matrix", "--primes", "5"]);
    assert_eq!(v["payload"]["ground"].as_array().unwrap().len(), v["payload"]["rows"][0].as_array().unwrap().len());
    let (v, code) = cli(&["gb", "search", "--size", "1", "--below", "50"]);
    assert_eq!(code, 0);
    assert!(v["payload"]["count"].is_u64());
}

#[test]
fn binary_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let status = Command::new(env!("CARGO_BIN_EXE_matroid-charset"))
        .args(["density", "theoretical", "--moduli", "3,5", "--pretty", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["payload"]["density"]["exact"], "3/8");
}

#[test]
fn binary_threads_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_matroid-charset"))
        .args(["gb", "check", "--primes", "3"])
        .env("MATROID_CHARSET_THREADS", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
}
