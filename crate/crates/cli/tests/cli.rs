use std::path::PathBuf;
use std::process::{Command, Output};

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn blockwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockwb")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_all_on_q8_emits_reports() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec("q8_c3sq.json");
    let o = blockwb(&["verify-all", s.to_str().unwrap(), "--out", dir.path().to_str().unwrap(), "--samples", "5000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in ["verify.json", "picard.json", "picard.txt"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    let outcomes = v["outcomes"].as_array().unwrap();
    assert!(outcomes.iter().all(|o| o["status"] != "fail"));
    assert!(outcomes.iter().any(|o| o["scope"] == "q8_c3sq" && o["check"] == "qci" && o["status"] == "pass"));
}

#[test]
fn unfaithful_phi_is_a_spec_error() {
    let s = spec("q8_c3sq_bad_phi.json");
    let o = blockwb(&["characters", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("phi not faithful"));
}

#[test]
fn q_matrix_needs_one_simple_module() {
    let s = spec("c2xc2_c3sq.json");
    let o = blockwb(&["q-matrix", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("block has more than one simple module"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(blockwb(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(blockwb(&["characters", "/nonexistent/spec.json"]).status.code(), Some(1));
    let s = spec("c2xc2_c3sq.json");
    let o = blockwb(&["isometries", s.to_str().unwrap(), "--max-irr", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("exceeds bound"));
}

#[test]
fn json_reports_are_byte_identical() {
    let s = spec("heis27_c2_4.json");
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let o = blockwb(&["q-matrix", s.to_str().unwrap(), "--samples", "2000", "--jobs", "1", "--out", dir.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        std::fs::read(dir.path().join("qci.json")).unwrap()
    };
    let a = run();
    assert_eq!(a, run());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["algebras"].as_array().unwrap().len(), 2);
    assert_eq!(v["algebras"][1]["model"], "p2");
    assert_eq!(v["algebras"][1]["scan"]["counterexamples"].as_array().unwrap().len(), 0);
}

#[test]
fn characters_json_is_exact() {
    let s = spec("q8_c3sq.json");
    let o = blockwb(&["characters", s.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cartan"], serde_json::json!([[9]]));
    let first = &v["irr_b"][0]["values"][0];
    assert!(first["conductor"].is_u64());
    assert!(first["coords"][0].is_string());
}

#[test]
fn text_reports() {
    let s = spec("q8_c3sq.json");
    let o = blockwb(&["picard", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("Pic = T-factor"));
    let o = blockwb(&["analyze-action", s.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("2 with nontrivial action"));
    let o = blockwb(&["decomposition", s.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["decomposition"], serde_json::json!([[1], [1], [1], [1], [1], [2]]));
}
