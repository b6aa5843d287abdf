use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopstab")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn mixer() -> Value {
    json!({"d": 2, "generators": [{"kind": "mixer", "power": 1, "q": [["1", "0"], ["0", "-1"]]}]})
}

fn z_loop() -> Value {
    json!({"d": 1, "generators": [{"kind": "monomial", "k": 1, "c": [["1"]], "c_inv": [["1"]]}]})
}

fn coeff(x: i64) -> Value {
    json!([[format!("{x}/1")]])
}

#[test]
fn full_report_is_reproducible() {
    let args = ["verify", "--suite", "all", "--seed", "42", "--d", "2"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let rep = stdout_json(&a);
    let rows = rep["rows"].as_array().unwrap();
    assert!(rows.len() > 100);
    let keys: Vec<(String, String)> = rows
        .iter()
        .map(|r| (r["anchor"].as_str().unwrap().to_string(), r["instance"].as_str().unwrap().to_string()))
        .collect();
    assert!(keys.windows(2).all(|w| w[0] <= w[1]));
    assert!(keys.iter().all(|(a, _)| !a.is_empty()));
}

#[test]
fn artkey_at_a_single_point() {
    let o = run(&["verify", "--suite", "artkey", "--t", "3/5", "--window", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let rep = stdout_json(&o);
    assert_eq!(rep["config"]["points"], json!(["(0/1,1/1)", "(3/5,4/5)", "(1/1,0/1)"]));
    assert_eq!(rep["summary"]["failures"], json!(0));
}

#[test]
fn csv_output_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = run(&["verify", "--suite", "finite", "--s", "2", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("anchor,instance,pass,detail"));
    assert!(lines.all(|l| l.starts_with("finite.")));
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["verify", "--window", "99"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--points", "1/2"]).status.code(), Some(2));
    let bad = write(dir.path(), "c.json", &json!({"seed": 1, "colour": "red"}));
    assert_eq!(run(&["verify", "--config", &bad]).status.code(), Some(2));
    assert_eq!(run(&["linearize", "--input", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", &json!({"suite": "bott", "seed": 9, "d": 1, "instances": 3}));
    let o = run(&["verify", "--config", &cfg, "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let c = &stdout_json(&o)["config"];
    assert_eq!((c["suite"].clone(), c["seed"].clone(), c["d"].clone()), (json!("bott"), json!(9), json!(3)));
}

#[test]
fn linearize_rejects_bare_loops() {
    let dir = tempfile::tempdir().unwrap();
    let bare = write(dir.path(), "l.json", &json!({"d": 1, "terms": [{"exp": 1, "coeff": [["1/1"]]}]}));
    let o = run(&["linearize", "--input", &bare]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("provenance"));
}

#[test]
fn linearize_z() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["linearize", "--input", &write(dir.path(), "z.json", &z_loop())]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    // Q − 2e₀₀, with Q = −1 + 2·(projection onto ℕ)
    assert_eq!(v["B"]["laurent"]["terms"], json!([{"exp": 0, "coeff": coeff(-1)}]));
    assert_eq!(v["B"]["half"]["terms"], json!([{"exp": 0, "coeff": coeff(2)}]));
    assert_eq!(v["B"]["finite"], json!([{"i": 0, "j": 0, "entry": coeff(-2)}]));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == json!(true)));
}

#[test]
fn mixer_trace_is_constant() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "m.json", &mixer());
    let o = run(&["linearize", "--input", &input, "--points", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let frames = v["trace"].as_array().unwrap();
    assert_eq!(frames.len(), 5);
    assert!(frames.iter().all(|f| f["operator"] == frames[0]["operator"]));
    let t = run(&["trace", "--input", &input, "--family", "k", "--points", "2"]);
    let frames = stdout_json(&t);
    let frames = frames.as_array().unwrap();
    assert_eq!(frames[0]["t"], json!("0/1"));
    assert!(frames.iter().all(|f| f["operator"] == frames[0]["operator"]));
}

#[test]
fn finite_linearize_boxes() {
    let dir = tempfile::tempdir().unwrap();
    let single = write(dir.path(), "m.json", &json!({"factors": [mixer()]}));
    let o = run(&["finite-linearize", "--input", &single]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["box"], json!({"M": 0, "N": 1}));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == json!(true)));

    let one = json!([["1", "0"], ["0", "1"]]);
    let triv = json!({"factors": [{"d": 2, "generators": [{"kind": "constant", "c": one, "c_inv": one}]}]});
    let o = run(&["finite-linearize", "--input", &write(dir.path(), "t.json", &triv)]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let minus = json!([["-1/1", "0/1"], ["0/1", "-1/1"]]);
    let two = json!([["2/1", "0/1"], ["0/1", "2/1"]]);
    assert_eq!(v["B_F"]["laurent"]["terms"], json!([{"exp": 0, "coeff": minus}]));
    assert_eq!(v["B_F"]["half"]["terms"], json!([{"exp": 0, "coeff": two}]));
    assert_eq!(v["B_F"]["finite"], json!([]));
}

#[test]
fn bench_reports_timings() {
    let o = run(&["bench", "--suite", "bott"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["suites"][0]["suite"], json!("bott"));
    assert_eq!(v["dense_mul"].as_array().unwrap().len(), 3);
}
