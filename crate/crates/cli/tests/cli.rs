use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn vogel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vogel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = vogel(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.ends_with('\n') && text.trim_end().lines().count() == 1, "one document per line");
    serde_json::from_str(&text).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const TAU: &str = r#"{"inputs":2,"outputs":0,"circles":0,"vertices":[],"edges":[["in:1","in:2"]]}"#;
const GAMMA: &str = r#"{"inputs":0,"outputs":2,"circles":0,"vertices":[],"edges":[["out:1","out:2"]]}"#;
const THETA: &str = r#"{"inputs":0,"outputs":0,"circles":0,"vertices":[["a","b","c"],["x","y","z"]],"edges":[["a","x"],["b","z"],["c","y"]]}"#;

#[test]
fn westbury_report() {
    let v = json(&["verify", "westbury", "--json"]);
    assert_eq!(v["theta_t"], "-12z");
    let rel = v["relations"].as_array().unwrap();
    assert!(rel.iter().all(|r| r["pass"] == true));
    assert!(rel.iter().any(|r| r["name"] == "theta=2t*delta"));
    assert!(v["paper_note"].as_str().unwrap().contains("-24z inconsistent"));
}

#[test]
fn spec_examples() {
    let o = vogel(&["character", "--algebra", "sl2-killing", "--element", "x:1"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = vogel(&["dim", "--inputs", "3", "--outputs", "0", "--degree", "1", "--max-components", "1"]);
    assert_eq!(stdout(&o).trim(), "1");
    let v = json(&["character", "--algebra", "sl2-killing", "--element", "t", "--json"]);
    assert_eq!(v["value"], "1/2");
}

#[test]
fn exit_codes() {
    assert_eq!(vogel(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(vogel(&["dim", "--inputs", "x"]).status.code(), Some(2));
    assert_eq!(vogel(&["verify", "nonsense"]).status.code(), Some(2));
    // x_4 has nine vertices, above the default cap.
    assert_eq!(vogel(&["character", "--algebra", "sl2-killing", "--element", "x:4"]).status.code(), Some(3));
    assert_eq!(vogel(&["--cap", "2", "dim", "--inputs", "3", "--outputs", "0", "--degree", "3"]).status.code(), Some(3));
    assert_eq!(vogel(&["--cap", "2", "eval", "--algebra", "sl2-trace", "-"]).status.code(), Some(3));
    let bad = scratch("bad.json", r#"{"inputs":1,"outputs":0,"circles":0,"vertices":[],"edges":[]}"#);
    assert_eq!(vogel(&["normalize", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(vogel(&["character", "--algebra", "sl2-killing", "--element", "y"]).status.code(), Some(1));
}

#[test]
fn compose_and_round_trip() {
    let tau = scratch("tau.json", TAU);
    let gamma = scratch("gamma.json", GAMMA);
    let v = json(&["compose", tau.to_str().unwrap(), gamma.to_str().unwrap(), "--json"]);
    assert_eq!(v["terms"][0]["diagram"]["circles"], 1);
    assert_eq!(v["terms"][0]["coeff"], "1");

    let theta = scratch("theta.json", THETA);
    let once = stdout(&vogel(&["normalize", theta.to_str().unwrap(), "--json"]));
    let again_path = scratch("theta_norm.json", &once);
    let twice = stdout(&vogel(&["normalize", again_path.to_str().unwrap(), "--json"]));
    assert_eq!(once, twice);
    let reparsed: Value = serde_json::from_str(&once).unwrap();
    let back: Value = serde_json::from_str(&serde_json::to_string(&reparsed).unwrap()).unwrap();
    assert_eq!(back, reparsed);
    assert_eq!(reparsed["terms"].as_array().unwrap().len(), 1);
    assert_eq!(reparsed["terms"][0]["diagram"]["vertices"].as_array().unwrap().len(), 2);

    let v = json(&["tensor", tau.to_str().unwrap(), gamma.to_str().unwrap(), "--json"]);
    assert_eq!((v["inputs"].as_u64(), v["outputs"].as_u64()), (Some(2), Some(2)));
}

#[test]
fn evaluation() {
    let theta = scratch("theta_eval.json", THETA);
    let o = vogel(&["eval", "--algebra", "sl2-killing", theta.to_str().unwrap()]);
    let x = stdout(&o);
    assert!(x.trim() == "3" || x.trim() == "-3", "{x}");
    let alg = stdout(&vogel(&["algebra", "sl2-trace", "--json"]));
    let alg_path = scratch("sl2.json", &alg);
    let circle = scratch("circle.json", r#"{"inputs":0,"outputs":0,"circles":1,"vertices":[],"edges":[]}"#);
    let o = vogel(&["eval", "--algebra", alg_path.to_str().unwrap(), circle.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "3");
    let tau = scratch("tau_eval.json", TAU);
    let v = json(&["eval", "--algebra", "gl11", tau.to_str().unwrap(), "--json"]);
    assert_eq!(v["data"].as_array().unwrap().len(), 16);
}

#[test]
fn lambda_and_chi() {
    let v = json(&["lambda", "chi", "2", "--json"]);
    assert_eq!(v["chi"]["monomials"][0]["sigma"], serde_json::json!([2, 0, 0]));
    let text = stdout(&vogel(&["chi", "1"]));
    assert!(text.starts_with("chi(1) = 2*s1"));
    let tt = json(&["lambda", "mul", "t", "t", "--json"]);
    let x2 = json(&["lambda", "element", "x:2", "--json"]);
    assert_eq!(tt, x2);
    let v = json(&["casimir", "--algebra", "sl2-killing", "--json"]);
    assert_eq!(v["adjoint"]["eigenvalues"], serde_json::json!([["1", 3]]));
}

#[test]
fn verify_suites() {
    for suite in ["prop", "lie", "metric", "lambda"] {
        let o = vogel(&["verify", suite]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let v = json(&["verify", "metric", "--json"]);
    assert_eq!(v["suite"], "metric");
}
