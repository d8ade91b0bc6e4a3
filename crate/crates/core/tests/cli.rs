use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lie-fts"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lie-fts-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

// D4 with Bourbaki numbering: alpha = alpha_2 = [0,1,0,0], rho = [1,2,1,1],
// rho - alpha = [1,1,1,1].
const X_ALPHA: &str = r#"{"type":"d4","entries":[{"root_coords":[0,1,0,0],"numerator":1,"denominator":1}]}"#;
const X_RANK4: &str = r#"{"type":"d4","entries":[
    {"root_coords":[0,1,0,0],"numerator":1,"denominator":1},
    {"root_coords":[1,1,1,1],"numerator":"1","denominator":"1"}]}"#;

#[test]
fn table_counts_roots() {
    for (label, n) in [("d4", 24), ("e8", 240)] {
        let o = run(&["table", "--type", label]);
        assert!(o.status.success());
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["roots"].as_array().unwrap().len(), n);
        assert_eq!(v["type"], label);
        assert!(!v["structure_constants"].as_array().unwrap().is_empty());
    }
}

#[test]
fn table_rejects_unsupported_type() {
    for label in ["a3", "c5", "g2", "d3", "x"] {
        assert_eq!(run(&["table", "--type", label]).status.code(), Some(2), "{label}");
    }
}

#[test]
fn table_writes_out_file() {
    let out = scratch("table.json", "");
    let o = run(&["table", "--type", "d4", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["rho"], serde_json::json!([1, 2, 1, 1]));
    assert_eq!(v["alpha"], serde_json::json!([0, 1, 0, 0]));
}

#[test]
fn eval_reports_forms() {
    let x = scratch("rank4.json", X_RANK4);
    let p = x.to_str().unwrap();
    let o = run(&["eval", "--type", "d4", "--json", p, p, p]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["q"], "6");
    assert_eq!(v["bilinear"], "0");
    assert_eq!(v["triple_product"]["entries"].as_array().unwrap().len(), 2);
    let text = stdout(&run(&["eval", "--type", "d4", p]));
    assert_eq!(text.trim(), "q(x) = 6");
}

#[test]
fn eval_rejects_bad_elements() {
    let not_root = scratch("bad1.json", r#"{"type":"d4","entries":[{"root_coords":[2,0,0,0],"numerator":1}]}"#);
    let wrong_height = scratch("bad2.json", r#"{"type":"d4","entries":[{"root_coords":[1,0,0,0],"numerator":1}]}"#);
    let wrong_len = scratch("bad3.json", r#"{"type":"d4","entries":[{"root_coords":[0,1,0],"numerator":1}]}"#);
    let wrong_type = scratch("bad4.json", r#"{"type":"e6","entries":[]}"#);
    let garbage = scratch("bad5.json", "not json");
    let zero_den = scratch("bad6.json", r#"{"type":"d4","entries":[{"root_coords":[0,1,0,0],"numerator":1,"denominator":0}]}"#);
    for p in [not_root, wrong_height, wrong_len, wrong_type, garbage, zero_den] {
        let o = run(&["eval", "--type", "d4", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{}", p.display());
    }
    let missing = run(&["eval", "--type", "d4", "/nonexistent/element.json"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn rank_command() {
    let x = scratch("alpha.json", X_ALPHA);
    let v: Value = serde_json::from_str(&stdout(&run(&["rank", "--type", "d4", "--json", x.to_str().unwrap()]))).unwrap();
    assert_eq!(v["rank"], 1);
    assert_eq!(v["strictly_regular"], true);
    assert!(v.get("decomposition").is_none());

    let x = scratch("rank4b.json", X_RANK4);
    let v: Value = serde_json::from_str(&stdout(&run(&["rank", "--type", "d4", "--json", x.to_str().unwrap()]))).unwrap();
    assert_eq!(v["rank"], 4);
    assert_eq!(v["q_value"], "6");
    assert_eq!(v["xxx_nonzero"], true);
    let parts = v["decomposition"].as_array().unwrap();
    assert_eq!(parts.len(), 2);
    let mut coords: Vec<Value> = parts.iter().map(|p| p["entries"][0]["root_coords"].clone()).collect();
    coords.sort_by_key(|c| c.to_string());
    assert_eq!(coords, vec![serde_json::json!([0, 1, 0, 0]), serde_json::json!([1, 1, 1, 1])]);

    // Orthogonal quadruple with coefficients 1, 1, 1, 2: q(x)/6 = +-8 is not a
    // rational square.
    let y = scratch(
        "nonsquare.json",
        r#"{"type":"d4","entries":[
            {"root_coords":[0,1,0,0],"numerator":1},
            {"root_coords":[1,1,1,0],"numerator":1},
            {"root_coords":[1,1,0,1],"numerator":1},
            {"root_coords":[0,1,1,1],"numerator":2}]}"#,
    );
    let o = run(&["rank", "--type", "d4", "--json", y.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 4);
    assert!(v.get("decomposition").is_none());
    assert!(v["decomposition_note"].as_str().unwrap().contains("not a square"));
}

#[test]
fn verify_suites() {
    for args in [
        vec!["verify", "--type", "d4", "--suite", "forms", "--exhaustive"],
        vec!["verify", "--type", "e7", "--suite", "fts", "--seed", "7"],
        vec!["verify", "--type", "d4", "--suite", "stab"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("all checks passed"));
    }
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "--type", "e8", "--suite", "forms", "--exhaustive", "--count", "50", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "forms");
    assert_eq!(v["type"], "e8");
    assert_eq!(v["mode"]["sampled"]["count"], 50);
    assert!(v["note"].as_str().is_some());
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["failure_count"], 0);
        assert!(c["identity"].as_str().is_some());
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--type", "d4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--type", "d4", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["rank", "--type", "b4"]).status.code(), Some(2));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = bin()
        .args(["eval", "--type", "d4", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(X_RANK4.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "q(x) = 6");
}
