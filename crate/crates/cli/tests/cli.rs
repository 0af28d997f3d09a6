use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgepart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn construct_ferrers_sixteen() {
    let out = run(&["construct", "--class", "2K2", "--n", "16"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["templates"].as_array().unwrap().len(), 6);
    assert!(String::from_utf8_lossy(&out.stderr).contains("6 templates"));
}

#[test]
fn construct_side_condition_is_usage_error() {
    let out = run(&["construct", "--class", "S4-2K2", "--n", "8"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("n ≡ 1 mod 8"));
}

#[test]
fn construct_matchings_odd() {
    let out = run(&["construct", "--class", "P3", "--n", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["templates"].as_array().unwrap().len(), 5);
}

#[test]
fn construct_rejects_unknown_class_and_flags() {
    assert_eq!(code(&run(&["construct", "--class", "K5", "--n", "5"])), 2);
    assert_eq!(code(&run(&["construct", "--class", "2K2", "--n", "5", "--bogus"])), 2);
    assert_eq!(code(&run(&["construct", "--class", "C4", "--n", "5"])), 2);
}

#[test]
fn construct_other_formats() {
    let dot = run(&["construct", "--class", "2K2", "--n", "4", "--format", "dot"]);
    assert_eq!(code(&dot), 0);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("graph partition {"));
    let list = run(&["construct", "--class", "2K2", "--n", "4", "--format", "edgelist"]);
    assert_eq!(code(&list), 0);
    let text = String::from_utf8_lossy(&list.stdout);
    assert!(text.starts_with("4 6\n"));
    assert!(text.contains("# template 1"));
}

#[test]
fn pipeline_closure() {
    let dir = TempDir::new().unwrap();
    let cases: &[(&str, &[usize])] = &[
        ("none", &[5, 16]),
        ("P3", &[6, 7]),
        ("K2+K1", &[9]),
        ("K2+K1-P3", &[6]),
        ("P4", &[10]),
        ("2K2", &[17, 25]),
        ("S4", &[8]),
        ("2K2-C4", &[11, 12]),
        ("2K2-C4-P4", &[7]),
        ("C4-P4-S4", &[27]),
        ("C4-P4", &[9, 10]),
        ("2K2-P4", &[8]),
        ("2K2-S4", &[17]),
        ("2K2-P4-S4", &[9]),
        ("C4-S4", &[8]),
        ("P4-S4", &[12]),
        ("2K2-C4-S4", &[15]),
        ("2K2-C4-P4-S4", &[7, 8]),
    ];
    for (class, ns) in cases {
        for n in *ns {
            let file = dir.path().join(format!("{class}-{n}.json"));
            let n_arg = n.to_string();
            let out = run(&["construct", "--class", class, "--n", &n_arg, "--out", path_str(&file)]);
            assert_eq!(code(&out), 0, "{class} n={n}: {}", String::from_utf8_lossy(&out.stderr));
            let verified = run(&["verify", "--partition", path_str(&file)]);
            assert_eq!(code(&verified), 0, "{class} n={n}");
            assert_eq!(stdout_json(&verified)["valid"], Value::Bool(true));
        }
    }
}

#[test]
fn verify_reports_uncovered_edge() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("p.json");
    let out = run(&["construct", "--class", "2K2", "--n", "9", "--out", path_str(&file)]);
    assert_eq!(code(&out), 0);
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    doc["templates"][0]["edges"].as_array_mut().unwrap().pop();
    fs::write(&file, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["verify", "--partition", path_str(&file)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("uncovered-edge"));
}

#[test]
fn verify_parse_failure() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("bad.json");
    fs::write(&file, "{ not json").unwrap();
    assert_eq!(code(&run(&["verify", "--partition", path_str(&file)])), 2);
    assert_eq!(code(&run(&["verify", "--partition", "/nonexistent/file.json"])), 2);
}

#[test]
fn verify_with_stricter_class() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("p.json");
    assert_eq!(code(&run(&["construct", "--class", "2K2", "--n", "9", "--out", path_str(&file)])), 0);
    let out = run(&["verify", "--partition", path_str(&file), "--class", "2K2-C4"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("induced-pattern"));
}

#[test]
fn solve_k4() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("k4.txt");
    fs::write(&file, K4).unwrap();
    let out = run(&["solve", "--graph", path_str(&file), "--class", "2K2"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["chi"], 2);
    assert_eq!(doc["witness"]["templates"].as_array().unwrap().len(), 2);
    assert!(doc["stats"].get("elapsed_ms").is_none());

    let again = run(&["solve", "--graph", path_str(&file), "--class", "2K2"]);
    assert_eq!(out.stdout, again.stdout);

    let pruned = run(&["solve", "--graph", path_str(&file), "--class", "P3", "--repair-prune", "--timing"]);
    assert_eq!(code(&pruned), 0);
    let doc = stdout_json(&pruned);
    assert_eq!(doc["chi"], 3);
    assert!(doc["stats"].get("elapsed_ms").is_some());
}

#[test]
fn solve_budget_exhausted() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("k4.txt");
    fs::write(&file, K4).unwrap();
    let out = run(&["solve", "--graph", path_str(&file), "--class", "P3", "--budget-nodes", "1"]);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout_json(&out)["status"], "budget-exhausted");
}

#[test]
fn solve_bad_graph() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("bad.txt");
    fs::write(&file, "3 1\n2 1\n").unwrap();
    assert_eq!(code(&run(&["solve", "--graph", path_str(&file), "--class", "2K2"])), 2);
}

#[test]
fn bounds_json() {
    let out = run(&["bounds", "--class", "2K2", "--n", "16"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["lower"], 4);
    assert_eq!(doc["upper"], 6);
    assert!(doc["known_value"].is_null());
    let out = run(&["bounds", "--class", "2K2-C4", "--n", "7"]);
    assert_eq!(stdout_json(&out)["known_value"], 4);
}

#[test]
fn table_guard() {
    assert_eq!(code(&run(&["table", "--nmax", "99"])), 2);
    assert_eq!(code(&run(&["table", "--nmax", "1"])), 2);
}

#[test]
fn table_small() {
    let out = run(&["table", "--nmax", "4", "--json"]);
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 19 * 3);
    let bad: Vec<(String, u64)> = rows
        .iter()
        .filter(|r| !r["problems"].as_array().unwrap().is_empty())
        .map(|r| (r["class"].as_str().unwrap().to_string(), r["n"].as_u64().unwrap()))
        .collect();
    // The degree-two classes count one template too few on odd n; the
    // table flags exactly that row and nothing else.
    assert_eq!(bad, vec![("S4".to_string(), 3)]);
    assert_eq!(code(&out), 1);
    for r in &rows {
        if let (Some(s), Some(c)) = (r["solver"].as_u64(), r["construction"].as_u64()) {
            assert!(s <= c);
        }
    }
}

#[test]
fn table_with_budget_allows_larger_n() {
    let out = run(&["table", "--nmax", "6", "--budget-nodes", "2000", "--json"]);
    assert!(matches!(code(&out), 0 | 1));
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 19 * 5);
}

#[test]
fn cover_probability_estimate() {
    let out = run(&["cover-c4", "--n", "14", "--q", "2", "--trials", "20000", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["exact"], "3/13");
    let est = doc["estimate"].as_f64().unwrap();
    assert!((est - 3.0 / 13.0).abs() < 0.02, "{est}");
}

#[test]
fn cover_run_and_partition() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("cover.json");
    let out = run(&["cover-c4", "--n", "14", "--q", "2", "--seed", "5", "--emit-partition", path_str(&file)]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["covered"], true);
    assert_eq!(doc["per_edge_cover_counts"].as_array().unwrap().len(), 91);
    let again = run(&["cover-c4", "--n", "14", "--q", "2", "--seed", "5"]);
    assert_eq!(out.stdout, again.stdout);
    assert_eq!(code(&run(&["verify", "--partition", path_str(&file)])), 0);
}

#[test]
fn cover_thread_count_does_not_change_output() {
    let one = run(&["--threads", "1", "cover-c4", "--n", "14", "--q", "2", "--seed", "9", "--runs", "4"]);
    let four = run(&["--threads", "4", "cover-c4", "--n", "14", "--q", "2", "--seed", "9", "--runs", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout_json(&one).as_array().unwrap().len(), 4);
}

#[test]
fn cover_failures() {
    let out = run(&["cover-c4", "--n", "14", "--q", "2", "--kmax", "0", "--seed", "1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["covered"], false);
    assert_eq!(code(&run(&["cover-c4", "--n", "14", "--q", "4"])), 2);
    assert_eq!(code(&run(&["cover-c4", "--n", "15", "--q", "2"])), 2);
}

fn bird_path() -> String {
    format!("{}/../core/data/bird.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn gadget_verify_bird() {
    let out = run(&["gadget", "verify", &bird_path()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["certifies"], true);
    assert_eq!(doc["shape_violations"].as_array().unwrap().len(), 0);
}

#[test]
fn gadget_verify_rejects_broken_gadget() {
    let dir = TempDir::new().unwrap();
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(bird_path()).unwrap()).unwrap();
    doc["edges"].as_array_mut().unwrap().pop();
    let file = dir.path().join("broken.json");
    fs::write(&file, doc.to_string()).unwrap();
    let out = run(&["gadget", "verify", path_str(&file)]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["certifies"], false);
}

#[test]
fn gadget_reduce_k4_and_petersen() {
    let dir = TempDir::new().unwrap();
    let cubic = dir.path().join("k4.txt");
    fs::write(&cubic, K4).unwrap();
    let part = dir.path().join("gstar.json");
    let out = run(&["gadget", "reduce", "--cubic", path_str(&cubic), "--gadget", &bird_path(), "--out", path_str(&part)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&run(&["verify", "--partition", path_str(&part)])), 0);

    let petersen = dir.path().join("petersen.txt");
    fs::write(
        &petersen,
        "10 15\n0 1\n0 4\n0 5\n1 2\n1 6\n2 3\n2 7\n3 4\n3 8\n4 9\n5 7\n5 8\n6 8\n6 9\n7 9\n",
    )
    .unwrap();
    assert_eq!(code(&run(&["gadget", "reduce", "--cubic", path_str(&petersen)])), 1);

    let path = dir.path().join("path.txt");
    fs::write(&path, "3 2\n0 1\n1 2\n").unwrap();
    assert_eq!(code(&run(&["gadget", "reduce", "--cubic", path_str(&path)])), 2);
}
