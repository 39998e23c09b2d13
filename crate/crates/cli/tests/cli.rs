use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn poincare(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poincare")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = poincare(&all);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

#[test]
fn build_summaries() {
    let r = json(&["build", "3", "4", "2", "0"]);
    assert_eq!(r["result"]["dimension"], 8);
    assert_eq!(r["result"]["hilbert_function"], serde_json::json!([1, 3, 2, 1, 1]));
    assert_eq!(r["result"]["class"], "almost_stretched");
    assert_eq!(r["result"]["shape"], serde_json::json!({"s": 4, "t": 2}));
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let out = poincare(&["build", "2", "3", "2", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dimension: 6"), "{text}");
    assert!(text.contains("hilbert function: {1,2,2,1}"), "{text}");

    let st = json(&["build", "3", "3", "1", "0", "--stretched"]);
    assert_eq!(st["result"]["class"], "stretched");
    assert_eq!(st["result"]["hilbert_function"], serde_json::json!([1, 3, 1, 1]));
}

#[test]
fn build_rejects_invalid_parameters() {
    let out = poincare(&["build", "3", "2", "2", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("s >= t + 1"));
    assert!(!poincare(&["build", "3", "4", "1", "0"]).status.success());
}

#[test]
fn build_emits_importable_algebra() {
    let path = tmp("a342.json");
    let out = poincare(&["build", "3", "4", "2", "1", "--emit-algebra", path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = poincare(&["betti", "--algebra-file", path.to_str().unwrap(), "--depth", "3", "--format", "csv"]);
    assert_eq!(stdout(&out), "i,b_i\n0,1\n1,3\n2,8\n3,21\n");
}

#[test]
fn betti_tables() {
    let out = poincare(&["betti", "A", "3", "3", "2", "0", "--depth", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("betti: 1,3,8,21,55,144 | match: yes"));

    let sl = json(&["betti", "SL", "3", "2", "0", "--depth", "4"]);
    assert_eq!(sl["result"]["betti"], serde_json::json!([1, 2, 4, 8, 16]));
    assert_eq!(sl["result"]["match"], true);

    let rk = json(&["betti", "RK", "4", "4", "2", "1", "--depth", "4"]);
    assert_eq!(rk["result"]["betti"], serde_json::json!([1, 4, 16, 64, 256]));

    let sv = poincare(&["betti", "SV", "3", "2", "0", "--depth", "3", "--format", "csv"]);
    assert_eq!(stdout(&sv), "i,b_i,series,match\n0,1,1,yes\n1,2,2,yes\n2,3,3,yes\n3,4,4,yes\n");
}

#[test]
fn betti_of_imported_cubic() {
    let file = data("cubic.json");
    let r = json(&["betti", "--algebra-file", &file, "--depth", "4", "--expected-series", "(1 + z) / (1 - z^2)"]);
    assert_eq!(r["result"]["betti"], serde_json::json!([1, 1, 1, 1, 1]));
    assert_eq!(r["result"]["series"], "1 / (1 - z)");
    assert_eq!(r["result"]["match"], true);
    let mismatch = poincare(&["betti", "--algebra-file", &file, "--depth", "2", "--expected-series", "1/(1-2z)"]);
    assert_eq!(mismatch.status.code(), Some(1));
}

#[test]
fn imported_prime_algebra_keeps_its_field() {
    let file = data("quartic_mod7.json");
    let r = json(&["betti", "--algebra-file", &file, "--depth", "3"]);
    assert_eq!(r["result"]["betti"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(r["watermark"], "characteristic-p heuristic");
    assert_eq!(poincare(&["betti", "--algebra-file", &file, "--field", "rational"]).status.code(), Some(2));
}

#[test]
fn betti_truncation_is_flagged() {
    let r = json(&["betti", "A", "3", "3", "2", "0", "--depth", "5", "--dim-cap", "30"]);
    assert_eq!(r["result"]["truncated"], true);
    assert_eq!(r["result"]["betti"], serde_json::json!([1, 3, 8]));
    assert_eq!(r["result"]["match"], true);
}

#[test]
fn betti_map_export() {
    let path = tmp("maps.json");
    let out = poincare(&["betti", "SV", "3", "2", "0", "--depth", "2", "--maps", path.to_str().unwrap()]);
    assert!(out.status.success());
    let maps: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(maps["betti"], serde_json::json!([1, 2, 3]));
    assert_eq!(maps["maps"][1]["source_rank"], 3);
    assert_eq!(maps["maps"][1]["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_passes_and_fails() {
    let out = poincare(&["verify", "3", "3", "2", "0", "--d", "0", "--depth", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS (6 checks)"));

    let out = poincare(&["verify", "2", "4", "3", "1", "--d", "2", "--depth", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("symbolic final: (1 + z)^2 / (1 - 2z + z^2)"));

    let out = poincare(&["verify", "3", "3", "2", "0", "--expected-series", "1 / (1 - 3z)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("FAIL betti_A"));
}

#[test]
fn verify_report_schema() {
    let r = json(&["verify", "3", "4", "2", "1", "--depth", "3"]);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    for k in ["command", "params", "checks", "runtime_ms"] {
        assert!(keys.contains(&k), "{keys:?}");
    }
    assert_eq!(r["command"], "verify");
    assert_eq!(r["checks"].as_array().unwrap().len(), 6);
    for c in r["checks"].as_array().unwrap() {
        assert!(c["name"].is_string() && c["expected"].is_string() && c["actual"].is_string() && c["pass"] == true);
    }
}

#[test]
fn prime_field_is_watermarked() {
    let r = json(&["verify", "3", "3", "2", "0", "--depth", "3", "--field", "prime:10007"]);
    assert_eq!(r["watermark"], "characteristic-p heuristic");
    assert_eq!(r["params"]["field"], "prime:10007");
    let text = stdout(&poincare(&["build", "3", "4", "2", "1/2", "--field", "prime:101"]));
    assert!(text.contains("[characteristic-p heuristic]"));
    assert!(json(&["build", "3", "4", "2", "0"]).get("watermark").is_none());
    assert_eq!(poincare(&["build", "3", "4", "2", "0", "--field", "prime:9"]).status.code(), Some(2));
}

#[test]
fn negative_and_fractional_a() {
    let r = json(&["betti", "A", "3", "4", "2", "-1", "--depth", "3"]);
    assert_eq!(r["result"]["betti"], serde_json::json!([1, 3, 8, 21]));
    let r = json(&["build", "3", "4", "2", "-5/3"]);
    assert_eq!(r["params"]["a"], "-5/3");
}

#[test]
fn classify_lists() {
    let text = stdout(&poincare(&["classify", "7", "3"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("{1,3,2,1}; {1,3,1,1,1}"));
    assert!(lines.next().unwrap().starts_with("rational: yes"));

    let r = json(&["classify", "7", "2"]);
    assert_eq!(r["result"]["possible"], serde_json::json!([[1, 2, 2, 1, 1], [1, 2, 1, 1, 1, 1]]));
    assert_eq!(r["result"]["excluded"], serde_json::json!([[1, 2, 3, 1]]));

    let r = json(&["classify", "26", "20"]);
    assert_eq!(r["result"]["rationality"]["guaranteed"], false);
    assert_eq!(poincare(&["classify", "3", "3"]).status.code(), Some(2));
}

#[test]
fn poincare_expansions() {
    let text = stdout(&poincare(&["poincare", "0", "3", "--expand", "5"]));
    assert_eq!(text, "1 / (1 - 3z + z^2)\n[1, 3, 8, 21, 55, 144]\n");
    let text = stdout(&poincare(&["poincare", "1", "2", "--expand", "3"]));
    assert_eq!(text, "(1 + z) / (1 - 2z + z^2)\n[1, 3, 5, 7]\n");
    let csv = stdout(&poincare(&["poincare", "0", "2", "--expand", "2", "--format", "csv"]));
    assert_eq!(csv, "i,coefficient\n0,1\n1,2\n2,3\n");
    let r = json(&["poincare", "2", "4", "--expand", "1", "--trace"]);
    // S, S/x, S/V, S/L, then h - 2 socle steps, A, then d lifts
    assert_eq!(r["result"]["trace"].as_array().unwrap().len(), 4 + 2 + 1 + 2);
    assert_eq!(poincare(&["poincare", "0", "1"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "3", "4", "3", "1", "--depth", "4", "--format", "json"][..],
        &["betti", "A", "4", "5", "3", "1", "--depth", "3", "--format", "json"],
        &["build", "4", "5", "3", "2", "--format", "json"],
        &["classify", "9", "3", "--format", "json"],
    ] {
        let a = poincare(args);
        let b = poincare(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_file_and_formats() {
    let path = tmp("verify.json");
    let out = poincare(&["verify", "3", "3", "2", "0", "--depth", "3", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["runtime_ms"], 0);
    assert_eq!(poincare(&["build", "3", "4", "2", "0", "--format", "csv"]).status.code(), Some(2));
    let timed = json(&["poincare", "0", "3", "--timing"]);
    assert!(timed["runtime_ms"].is_u64());
}
