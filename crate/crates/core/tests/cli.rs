use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lpmwc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn lpmwc")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lpmwc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn gen(name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    scratch(name, &stdout(&run(&full)))
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn gen_star_writes_header_and_graph() {
    let text = stdout(&run(&["gen", "star", "--k", "4"]));
    assert!(text.starts_with("lpmwc 1\n"));
    assert!(text.contains("graph 5 4\n"));
    assert!(text.contains("terminals 4 1 2 3 4\n"));
}

#[test]
fn gen_fig1_records_a() {
    let text = stdout(&run(&["gen", "fig1", "--p", "2"]));
    assert!(text.contains("# a 64\n"), "{text}");
}

#[test]
fn gen_3partition_records_threshold() {
    let text = stdout(&run(&[
        "gen",
        "3partition",
        "--weights",
        "6,7,7",
        "--B",
        "20",
        "--p",
        "2",
    ]));
    let t: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# threshold "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((t - 8_294_800f64.sqrt()).abs() < 1e-9 * t);
}

#[test]
fn gen_random_is_deterministic() {
    let args = [
        "gen", "random", "--n", "9", "--k", "3", "--seed", "17", "--lo", "1", "--hi", "5",
    ];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn solve_exact_star() {
    let path = gen("star4.txt", &["star", "--k", "4"]);
    let rep = json(&run(&["solve", path.to_str().unwrap(), "--algo", "exact"]));
    assert!((f(&rep["objective"]) - 12f64.sqrt()).abs() < 1e-6);
    assert_eq!(rep["algorithm"], "exact");
    assert!(rep["states_explored"].as_u64().unwrap() > 0);
}

#[test]
fn compare_reports_best_of_all_algorithms() {
    let path = gen(
        "random-compare.txt",
        &["random", "--n", "8", "--k", "3", "--seed", "5", "--hi", "9"],
    );
    let rep = json(&run(&[
        "solve",
        path.to_str().unwrap(),
        "--algo",
        "compare",
    ]));
    let algos = rep["algorithms"].as_array().unwrap();
    assert_eq!(algos.len(), 3);
    let best = algos
        .iter()
        .filter_map(|a| a["objective"].as_f64())
        .fold(f64::INFINITY, f64::min);
    assert_eq!(f(&rep["objective"]), best);
    let exact = algos.iter().find(|a| a["algorithm"] == "exact").unwrap();
    assert_eq!(f(&exact["objective"]), best);
    assert!(f(&rep["ratio_vs_oracle"]) >= 1.0);
}

#[test]
fn approx_rejects_infinity_norm() {
    let path = gen("star-inf.txt", &["star", "--k", "3", "--p", "inf"]);
    let out = run(&["solve", path.to_str().unwrap(), "--algo", "approx"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn malformed_instance_exits_with_parse_code() {
    let path = scratch(
        "bad.txt",
        "lpmwc 1\np 2\ngraph 3 1\nterminals 2 0 1\n0 9 1\n",
    );
    let out = run(&["solve", path.to_str().unwrap(), "--algo", "exact"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_with_budget_code() {
    let path = gen(
        "budget.txt",
        &["random", "--n", "12", "--k", "3", "--seed", "1"],
    );
    let out = run(&[
        "solve",
        path.to_str().unwrap(),
        "--algo",
        "exact",
        "--budget",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn eval_integral_and_indicator_rows_agree() {
    let inst = gen("eval.txt", &["star", "--k", "3", "--p", "3"]);
    let part = scratch("eval-part.txt", "part 1 1 0\npart 2 2\npart 3 3\n");
    let frac = scratch(
        "eval-frac.txt",
        "frac 0 1 0 0\nfrac 1 1 0 0\nfrac 2 0 1 0\nfrac 3 0 0 1\n",
    );
    let a = json(&run(&[
        "eval",
        inst.to_str().unwrap(),
        part.to_str().unwrap(),
    ]));
    let b = json(&run(&[
        "eval",
        inst.to_str().unwrap(),
        frac.to_str().unwrap(),
    ]));
    assert_eq!(f(&a["objective"]), f(&b["objective"]));
    assert_eq!(a["part_cuts"], b["part_cuts"]);
}

#[test]
fn eval_uniform_star() {
    let inst = gen("eval-uniform.txt", &["star", "--k", "4"]);
    let q = 0.25;
    let mut rows = format!("frac 0 {q} {q} {q} {q}\n");
    for t in 1..=4 {
        let row: Vec<&str> = (1..=4).map(|i| if i == t { "1" } else { "0" }).collect();
        rows.push_str(&format!("frac {t} {}\n", row.join(" ")));
    }
    let frac = scratch("eval-uniform-frac.txt", &rows);
    let rep = json(&run(&[
        "eval",
        inst.to_str().unwrap(),
        frac.to_str().unwrap(),
    ]));
    assert!((f(&rep["objective"]) - 3.0).abs() < 1e-9);
}

#[test]
fn eval_rejects_missing_vertex() {
    let inst = gen("eval-missing.txt", &["star", "--k", "3"]);
    let part = scratch("eval-missing-part.txt", "part 1 1\npart 2 2\npart 3 3\n");
    let out = run(&["eval", inst.to_str().unwrap(), part.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));
}

#[test]
fn gap_on_small_stars() {
    let rep = json(&run(&["gap", "--k", "4", "--p", "2"]));
    assert!((f(&rep["integral_exact"]) - 12f64.sqrt()).abs() < 1e-9);
    assert!((f(&rep["fractional_value"]) - 3.0).abs() < 1e-9);
    assert!((f(&rep["gap_lower_bound"]) - 1.0).abs() < 1e-12);

    let rep = json(&run(&["gap", "--k", "8", "--p", "3"]));
    assert!(f(&rep["ratio"]) >= 2.0);
    assert_eq!(rep["holds"], true);

    assert!(!run(&["gap", "--k", "2", "--p", "2"]).status.success());
}
