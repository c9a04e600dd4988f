use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pkp_core::io::{from_json, to_json};
use pkp_core::{BigProduct, Instance};
use serde_json::Value;

fn pkp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pkp")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn gen_is_reproducible_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gen", "random", "--n", "10", "--seed", "7"];
    let a = pkp(&args);
    let b = pkp(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let body = stdout(&a);
    assert_eq!(to_json(&from_json(&body).unwrap()) + "\n", body);

    let out = dir.path().join("x.json");
    let out = out.to_str().unwrap();
    assert!(pkp(&["gen", "random", "--n", "10", "--seed", "7", "--out", out]).status.success());
    assert_eq!(fs::read_to_string(out).unwrap(), body);

    let pos = pkp(&["gen", "random", "--n", "50", "--neg-fraction", "0"]);
    let inst = from_json(&stdout(&pos)).unwrap();
    assert!(inst.items().iter().all(|it| it.profit > 0));
}

#[test]
fn solve_reports_verified_values() {
    let dir = tempfile::tempdir().unwrap();
    let ex = stdout(&pkp(&["gen", "example1", "--m", "10"]));
    let file = write(dir.path(), "ex.json", &ex);
    let inst: Instance = from_json(&ex).unwrap();
    for (algo, extra, value) in [
        ("exact", vec![], "1200"),
        ("brute", vec![], "1200"),
        ("greedy", vec!["--trace"], "24"),
        ("fptas", vec!["--eps", "0.01"], "1200"),
    ] {
        let mut args = vec!["solve", file.as_str(), "--algo", algo];
        args.extend(extra);
        let out = pkp(&args);
        assert!(out.status.success(), "{algo}: {}", String::from_utf8_lossy(&out.stderr));
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["value"], value);
        let indices: Vec<usize> = serde_json::from_value(report["indices"].clone()).unwrap();
        let parsed: BigProduct = report["value"].as_str().unwrap().parse().unwrap();
        assert_eq!(inst.evaluate(&indices).unwrap(), parsed);
        assert_eq!(report["trace"].is_null(), algo != "greedy");
    }

    let text = pkp(&["solve", &file, "--format", "text"]);
    assert!(stdout(&text).contains("1200"));
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ex = write(dir.path(), "ex.txt", "1 3\n-5 2\n");
    assert_eq!(pkp(&["solve", &ex]).status.code(), Some(2));
    let good = write(dir.path(), "good.txt", "1 4\n3 1\n");
    assert_eq!(pkp(&["solve", &good]).status.code(), Some(0));
    assert_eq!(pkp(&["solve", &good, "--algo", "fptas"]).status.code(), Some(1));
    assert_eq!(pkp(&["solve", &good, "--algo", "fptas", "--eps", "2"]).status.code(), Some(1));
    assert_eq!(pkp(&["solve", &good, "--eps", "1/2"]).status.code(), Some(1));
    let bad = write(dir.path(), "bad.txt", "not an instance");
    assert_eq!(pkp(&["solve", &bad]).status.code(), Some(1));
    assert_eq!(pkp(&["solve", "/nonexistent/file"]).status.code(), Some(1));
    let neg = write(dir.path(), "neg.txt", "1 3\n2 -1\n");
    assert_eq!(pkp(&["solve", &neg]).status.code(), Some(1));
}

#[test]
fn reduction_commands() {
    let dir = tempfile::tempdir().unwrap();
    let yes = write(dir.path(), "yes.txt", "4 2 2 1\n");
    let out = pkp(&["reduce-ppp", &yes]);
    assert!(out.status.success());
    let inst = from_json(&stdout(&out)).unwrap();
    assert_eq!(inst.capacity(), 50);
    assert_eq!(inst.len(), 3);

    let out = pkp(&["verify-ppp", &yes]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["target"], "4");
    assert_eq!(report["pkp_optimum"], "4");

    let not_square = write(dir.path(), "ns.txt", "2 3");
    assert_eq!(pkp(&["reduce-ppp", &not_square]).status.code(), Some(1));
}

#[test]
fn check_reports_preprocessing() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c.txt", "6 4\n0 1\n7 9\n3 0\n-2 4\n-3 1\n2 2\n");
    let out = pkp(&["check", &file]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["removed"], serde_json::json!([0, 1, 3, 4]));
    assert_eq!(report["forced"], serde_json::json!([2]));
    assert_eq!(report["kept"], serde_json::json!([5]));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("b.csv");
    let csv_path = csv_path.to_str().unwrap();
    let out = pkp(&["bench", "--n", "4,6", "--eps", "1/2,0.1", "--seeds", "2", "--out", csv_path]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_path(csv_path).unwrap();
    assert_eq!(reader.headers().unwrap().len(), 10);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 8);
    for row in &rows {
        let exact: BigProduct = row[3].parse().unwrap();
        let fptas: BigProduct = row[4].parse().unwrap();
        let greedy: BigProduct = row[5].parse().unwrap();
        assert!(fptas <= exact && greedy <= exact);
    }
}
