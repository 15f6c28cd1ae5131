use std::process::{Command, Output};

use serde_json::Value;

fn efb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_efb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn mul_prints_the_product() {
    let out = efb(&["mul", "-m", "2", "q1 q2", "p1 p2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-q1p1 q2p2");
}

#[test]
fn mul_chains_left_to_right() {
    let out = efb(&["mul", "-m", "1", "q1", "p1", "q1"]);
    assert_eq!(stdout(&out).trim(), "q1");
    let out = efb(&["mul", "-m", "1", "q1", "q1"]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn mul_json() {
    let out = efb(&["--format", "json", "mul", "-m", "2", "q1 q2", "p1 p2"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"], "-q1p1 q2p2");
    assert_eq!(v["basis"], "efb");
}

#[test]
fn float_mode_multiplies() {
    let out = efb(&["--mode", "float", "mul", "-m", "1", "0.5 * q1", "p1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0.5 * q1p1");
}

#[test]
fn convert_both_ways() {
    let out = efb(&["convert", "-m", "1", "q1"]);
    assert_eq!(stdout(&out).trim(), "1/2 * g1 - 1/2 * g2");
    let out = efb(&["--basis", "gamma", "convert", "-m", "1", "g1 g2"]);
    assert_eq!(stdout(&out).trim(), "q1p1 - p1q1");
}

#[test]
fn gamma_basis_mul_stays_in_gamma() {
    let out = efb(&["--basis", "gamma", "mul", "-m", "1", "g2", "g2"]);
    assert_eq!(stdout(&out).trim(), "-1");
}

#[test]
fn eigen_reports_both_sides() {
    let out = efb(&["eigen", "-m", "2", "q1 q2"]);
    assert_eq!(stdout(&out).trim(), "right=+1 left=+1");
    let out = efb(&["eigen", "-m", "1", "q1 + p1"]);
    assert_eq!(stdout(&out).trim(), "not an eigenvector");
}

#[test]
fn simple_and_tnp() {
    let out = efb(&["simple", "-m", "3", "q1 q2 q3 + p1q1 p2q2 q3"]);
    let text = stdout(&out);
    assert!(text.starts_with("simple: yes"), "{text}");
    assert!(text.contains("tnp (dim 3)"), "{text}");

    let out = efb(&["simple", "-m", "2", "q1 q2 + p1q1 q2"]);
    assert!(stdout(&out).starts_with("simple: no"));

    let out = efb(&["tnp", "-m", "2", "q1 q2"]);
    assert_eq!(stdout(&out).trim(), "span{q1, q2}");
}

#[test]
fn spinor_commands_need_exact_mode() {
    let out = efb(&["--mode", "float", "simple", "-m", "2", "q1 q2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--mode exact"));
}

#[test]
fn plane_lists_spinors_combination_and_tnp() {
    let out = efb(&["plane", "-m", "3", "-k", "3"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("spinor 1: q1 q2 q3"));
    assert!(text.contains("combination: "));
    assert!(text.contains("tnp: span{"));
    let out = efb(&["plane", "-m", "4", "-k", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn matrix_layout_and_image() {
    let out = efb(&["matrix", "-m", "1"]);
    let text = stdout(&out);
    assert!(text.contains("q1p1"), "{text}");
    assert!(text.contains("p1q1"), "{text}");

    let out = efb(&["matrix", "-m", "1", "q1"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["entries"], serde_json::json!([["0", "1"], ["0", "0"]]));

    let out = efb(&["--format", "json", "matrix", "-m", "2"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["m"], 2);
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let out = efb(&["mul", "-m", "2", "q1 q3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("line 1, column 4"),
        "{}",
        stderr(&out)
    );

    let out = efb(&["--format", "json", "mul", "-m", "2", "q1 g2"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "parse");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(efb(&["mul", "-m", "20", "q1"]).status.code(), Some(1));
    assert_eq!(efb(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(efb(&["bench", "-m", "13"]).status.code(), Some(1));
    assert_eq!(
        efb(&["bench", "-m", "2", "--trials", "10"]).status.code(),
        Some(1)
    );
    assert_eq!(efb(&["--help"]).status.code(), Some(0));
}

#[test]
fn bench_emits_json_lines() {
    let out = efb(&[
        "bench",
        "-m",
        "3",
        "--from",
        "2",
        "--rounds",
        "1",
        "--gamma-timing-cap",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    for line in &lines {
        for field in ["m", "algo", "density", "ns", "pairs_visited", "seed"] {
            assert!(line.get(field).is_some(), "{field} missing in {line}");
        }
    }
    let gamma3 = lines
        .iter()
        .find(|l| l["m"] == 3 && l["algo"] == "gamma_blade")
        .unwrap();
    assert!(gamma3["ns"].is_null());
    assert_eq!(gamma3["pairs_visited"], 4096);
}

#[test]
fn selftest_passes() {
    let out = efb(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("failed 0"));
}
