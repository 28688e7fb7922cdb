use std::path::PathBuf;
use std::process::{Command, Output};

use netfunc_core::fixtures::diamond;
use serde_json::Value;

fn netfunc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netfunc")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("netfunc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn diamond_file() -> PathBuf {
    write_temp("diamond.json", &serde_json::to_string_pretty(diamond().spec()).unwrap())
}

#[test]
fn example_bounds_report_closed_forms() {
    let v = json(&netfunc(&["example", "diamond", "--bounds"]));
    let b = &v["result"]["bounds"];
    let basic = b["basic"]["value"].as_f64().unwrap();
    assert!((basic - (1.75 - 0.375 * 3f64.log2())).abs() < 1e-12);
    assert_eq!(b["basic"]["witness"]["key"], "{e5,e6}|{{e5},{e6}}");
    let fixed = b["fixed_length"]["value"].as_f64().unwrap();
    assert!((fixed - (1.0 + 3f64.log2()) / 2.0).abs() < 1e-12);
    let improved = b["improved"]["value"].as_f64().unwrap();
    assert!((improved - 0.5 * 5f64.log2()).abs() < 1e-4);
    assert_eq!(v["tool"], "netfunc");
}

#[test]
fn simulate_builtin_diamond() {
    let v = json(&netfunc(&["simulate", "--builtin", "diamond", "--k", "4"]));
    assert_eq!(v["result"]["admissible"], true);
    assert!(v["result"]["rate"].as_f64().unwrap() <= 1.5);
}

#[test]
fn builtin_code_round_trips_through_a_file() {
    let v = json(&netfunc(&["simulate", "--builtin", "diamond", "--k", "2"]));
    let code = write_temp("code.json", &v["result"]["code"].to_string());
    let model = diamond_file();
    let w = json(&netfunc(&["simulate", code.to_str().unwrap(), "--model", model.to_str().unwrap()]));
    assert_eq!(w["result"]["admissible"], true);
    assert_eq!(w["result"]["rate"], v["result"]["rate"]);
}

#[test]
fn output_is_deterministic() {
    let path = diamond_file();
    let p = path.to_str().unwrap();
    let a = netfunc(&["bounds", p]);
    let b = netfunc(&["bounds", p]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn file_commands_accept_serialized_model() {
    let path = diamond_file();
    let p = path.to_str().unwrap();
    let v = json(&netfunc(&["validate", p]));
    assert!(v["result"].is_object());
    let cuts = json(&netfunc(&["cuts", p]));
    assert!(cuts["result"].to_string().contains("e5"));
    let classes = json(&netfunc(&["classes", p, "--cut", "e5,e6", "--partition", "e5|e6"]));
    assert!(classes["result"].is_object());
    let csv = netfunc(&["--csv", "bounds", p, "--no-improved"]);
    assert!(csv.status.success());
    assert!(String::from_utf8(csv.stdout).unwrap().lines().count() > 1);
}

#[test]
fn input_errors_exit_with_code_2() {
    let bad = write_temp("empty.json", "{}");
    let out = netfunc(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let out = netfunc(&["validate", "/nonexistent/model.json"]);
    assert_eq!(out.status.code(), Some(2));
    let path = diamond_file();
    let out = netfunc(&["classes", path.to_str().unwrap(), "--cut", "e9", "--partition", "e9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_caps_exit_with_code_3() {
    let path = diamond_file();
    let out = netfunc(&["--max-edges", "3", "cuts", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}
