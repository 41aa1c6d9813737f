use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tlfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlfree"))
        .args(args)
        .env_remove("TLFREE_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn identify_factor_fibonacci() {
    let out = tlfree(&["identify-factor", "fibonacci.json"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["t"]["exact"], "7/2+5/2*sqrt(5)");
    assert!((v["t"]["value"].as_f64().unwrap() - 9.0902).abs() < 1e-4);
}

#[test]
fn identify_factor_with_radius_reports_growth() {
    let v = json_of(&tlfree(&["identify-factor", "z3", "--radius", "2"]));
    assert!(!v["growth"]["steps"].as_array().unwrap().is_empty());
}

#[test]
fn tl_enumerate_catalan() {
    let v = json_of(&tlfree(&["tl-enumerate", "--word", "cccc"]));
    assert_eq!(v["count"], 2);
    let text = tlfree(&["tl-enumerate", "--word", "cccccc", "--format", "text"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap().lines().count(), 5);
}

#[test]
fn spectrum_bounds_inside_band() {
    let out = tlfree(&["spectrum", "--delta", "4", "--size", "1000"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    let (min, max) = (v["min"].as_f64().unwrap(), v["max"].as_f64().unwrap());
    assert!((-2.0..=2.0).contains(&min) && (-2.0..=2.0).contains(&max));
    let counts: u64 = v["histogram"]["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_u64().unwrap())
        .sum();
    assert_eq!(counts, 1000);
}

#[test]
fn spectrum_rejects_small_delta() {
    assert_eq!(code(&tlfree(&["spectrum", "--delta", "0.5", "--size", "10"])), 1);
}

#[test]
fn fusion_graph_dot_for_z2() {
    let out = tlfree(&["fusion-graph", "z2", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        dot.lines()
            .filter(|l| l.contains("[label=\"") && !l.contains("--"))
            .count(),
        2
    );
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("--")).collect();
    assert_eq!(edges.len(), 1);
    assert!(edges[0].contains("×2"));
    assert_eq!(
        tlfree(&["fusion-graph", "z2", "--format", "dot"]).stdout,
        dot.as_bytes()
    );
}

#[test]
fn fusion_graph_dot_shows_loops() {
    let dot = String::from_utf8(tlfree(&["fusion-graph", "fibonacci", "--format", "dot"]).stdout).unwrap();
    assert!(dot.contains("\"tau\" -- \"tau\""));
}

#[test]
fn validate_bundled_and_broken() {
    let dir = tempfile::tempdir().unwrap();
    let out = tlfree(&["export-bundled", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let out = tlfree(&["validate", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", path.display());
        assert_eq!(json_of(&out)["violations"].as_array().unwrap().len(), 0);
    }
    // z2 with g * g = g is not associative-compatible with the dual data.
    let broken = r#"{"simples":[{"name":"1","dual":"1"},{"name":"g","dual":"g"}],
                     "mult":[["g","g","g",1]],"generators":[{"color":"a","components":{"g":2}}]}"#;
    let path = dir.path().join("broken.json");
    std::fs::write(&path, broken).unwrap();
    assert_ne!(code(&tlfree(&["validate", path.to_str().unwrap()])), 0);
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&tlfree(&["validate", path.to_str().unwrap()])), 2);
    assert_eq!(code(&tlfree(&["graph-algebra", path.to_str().unwrap()])), 2);
    assert_eq!(code(&tlfree(&["no-such-command"])), 2);
    assert_eq!(code(&tlfree(&["validate", "not-a-category"])), 2);
}

#[test]
fn bad_tolerance_variable_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_tlfree"))
        .args(["spectrum", "--delta", "2", "--size", "10"])
        .env("TLFREE_TOLERANCE", "-1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

fn write_graph(dir: &Path, body: &str) -> String {
    let path = dir.join("graph.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn graph_algebra_two_loops() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_graph(
        dir.path(),
        r#"{"vertices":[{"id":"v","weight":"1"}],"edges":[{"v":"v","w":"v","color":"a","mult":2}],"base":"v"}"#,
    );
    let out = tlfree(&["graph-algebra", &path]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["base_parameter"]["exact"], "2");
}

#[test]
fn graph_algebra_single_edge_is_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_graph(
        dir.path(),
        r#"{"vertices":[{"id":"v","weight":"1"}],"edges":[{"v":"v","w":"v","color":"a"}],"base":"v"}"#,
    );
    assert_eq!(code(&tlfree(&["graph-algebra", &path])), 1);
}

#[test]
fn moments_of_single_loop_are_catalan() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_graph(
        dir.path(),
        r#"{"vertices":[{"id":"v","weight":"1"}],"edges":[{"v":"v","w":"v","color":"a"}],"base":"v"}"#,
    );
    let v = json_of(&tlfree(&["moments", &path, "--colors", "a", "-n", "8"]));
    let exact: Vec<&str> = v["moments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["exact"].as_str().unwrap())
        .collect();
    assert_eq!(exact, ["1", "0", "1", "0", "2", "0", "5", "0", "14"]);
}

#[test]
fn closed_form_and_hom_dim() {
    let v = json_of(&tlfree(&["closed-form", "rep_s3", "--generator", "rho"]));
    assert_eq!(v["t"]["exact"], "19");
    let v = json_of(&tlfree(&[
        "hom-dim",
        "fibonacci",
        "--alpha",
        "a,a",
        "--beta",
        "a,a",
    ]));
    assert_eq!(v["hom_dim"], 32);
    assert_eq!(code(&tlfree(&["hom-dim", "fibonacci", "--alpha", "b"])), 1);
}

#[test]
fn tl_gram_and_phi_check() {
    let v = json_of(&tlfree(&["tl-gram", "--word", "cccc", "--delta", "2"]));
    assert_eq!(v["matrix"], serde_json::json!([[4.0, 2.0], [2.0, 4.0]]));
    assert_eq!(v["positive_definite"], true);
    let out = tlfree(&["phi-check", "--max-len", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["ok"], true);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = tlfree(&["fp-dims", "ising", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["global_dim"]["exact"], "4");
}
