use std::process::Command;

use knotcore::BraidWord;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_knotcore")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, s) = run(args);
    assert_eq!(code, 0, "{s}");
    serde_json::from_str(&s).unwrap()
}

#[test]
fn trefoil_bracket() {
    let v = json(&["bracket", "1 1 1", "--strands", "2"]);
    let expect: Value = serde_json::from_str(r#"{"5": -1, "-3": -1, "-7": 1}"#).unwrap();
    assert_eq!(v["result"]["bracket"], expect);
    let expect: Value = serde_json::from_str(r#"{"-4": 1, "-12": 1, "-16": -1}"#).unwrap();
    assert_eq!(v["result"]["f"], expect);
    let keys: Vec<&String> = v["result"]["bracket"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["5", "-3", "-7"]);
}

#[test]
fn fib_rep_word_image() {
    let v = json(&["fib-rep", "--n", "4", "--word", "1 2"]);
    assert_eq!(v["result"]["dimension"], 2);
    assert!(v["result"]["unitarity_residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["result"]["image"].as_array().unwrap().len(), 2);
}

#[test]
fn hadamard_reports_exact_value() {
    let args = ["hadamard", "--word", "1 2 -1", "--theta", "0.45", "--shots", "10000", "--seed", "7"];
    let v = json(&args);
    let r = &v["result"];
    let (est, err, exact) = (r["estimate"].as_f64().unwrap(), r["stderr"].as_f64().unwrap(), r["exact"].as_f64().unwrap());
    assert!((est - exact).abs() < 5.0 * err);
    assert_eq!(v["config"]["seed"], 7);
    // byte-identical reruns
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn echoed_word_round_trips() {
    let v = json(&["jones", "n=4 1 -2 3 3"]);
    let echoed = v["config"]["word"].as_str().unwrap();
    assert_eq!(BraidWord::parse(echoed, None).unwrap(), BraidWord::parse("n=4 1 -2 3 3", None).unwrap());
}

#[test]
fn exit_codes() {
    let (code, s) = run(&["bracket", "1 x 2"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["diagnostics"]["position"], 1);
    assert_eq!(run(&["bracket", "--frobnicate"]).0, 2);
    assert_eq!(run(&["hadamard", "1 2", "--theta", "0.8"]).0, 3);
    assert_eq!(run(&["wrt", "1 2", "--level", "5"]).0, 3);
    let long = vec!["1"; 30].join(" ");
    assert_eq!(run(&["bracket", &long]).0, 4);
    assert_eq!(run(&["bracket", &long, "--method", "tl"]).0, 0);
    assert_eq!(run(&["recoupling-table", "--level", "20"]).0, 4);
}

#[test]
fn other_commands() {
    let v = json(&["wrt", "", "--strands", "2", "--level", "4"]);
    assert!((v["result"]["wrt"][0].as_f64().unwrap() - 4.0).abs() < 1e-10);
    let v = json(&["colored", "1 1", "--color", "2"]);
    assert!(v["result"]["value"].as_str().unwrap().contains("A^-12"));
    let v = json(&["recoupling-table", "--level", "5", "--kind", "matrix"]);
    assert!(v["result"]["orthogonality_residual"].as_f64().unwrap() < 1e-10);
    let v = json(&["recoupling-table", "--level", "5", "--network", "theta 2 2 2"]);
    assert!((v["result"]["value"][0].as_f64().unwrap() + 0.618_033_988_7).abs() < 1e-9);
    let v = json(&["su2-check", "--lengths", "2,4", "--samples", "20"]);
    assert!(v["result"]["braid_residual"].as_f64().unwrap() < 1e-10);
    let (code, text) = run(&["jones", "1 1 1", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("-t^4 + t^3 + t"));
}
