use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn heis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heis"))
        .args(args)
        .env_remove("HEIS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Runs with `--output json`, checks the report against its schema and
/// returns it with the exit code.
fn json_run(cmd: &str, field: &str, input: Option<&str>) -> (Value, i32) {
    let mut args = vec![cmd, "--field", field, "--output", "json"];
    if let Some(i) = input {
        args.extend(["--input", i]);
    }
    let out = heis(&args);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("{e}: {}", stderr(&out)));
    validate(cmd, &report);
    (report, out.status.code().unwrap())
}

fn validate(cmd: &str, report: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/v1/{cmd}.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{cmd}: {errors:?}\n{report:#}");
}

const P1_LINE: &str = r#"{"basis":[[1,0,0,0,0,1],[0,0,1,1,0,0]]}"#;
const PLANE_F: &str = r#"{"basis":[[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0]]}"#;
const POINT_S01: &str = r#"{"basis":[[1,0,0,0,0,0]]}"#;

#[test]
fn classify_examples() {
    let (r, code) = json_run("classify", "gf:3", Some(P1_LINE));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["label"], "line:P1(t=0,d=1)");
    assert_eq!(r["field"], "gf:3");
    assert!(r["result"]["witness"].is_array());
    let text = stdout(&heis(&["classify", "--field", "gf:3", "--input", P1_LINE]));
    assert!(text.contains("  label: line:P1(t=0,d=1)\n"), "{text}");

    let (r, code) = json_run("classify", "q", Some(PLANE_F));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["label"], "plane:F (not reduced)");
    assert_eq!(r["result"]["reduced"], false);
    assert!(r["result"]["witness"].is_null());
}

#[test]
fn input_errors() {
    let code = |args: &[&str]| heis(args).status.code().unwrap();
    assert_eq!(code(&["classify", "--input", r#"{"basis":[]}"#]), 3);
    assert_eq!(code(&["classify", "--input", r#"{"basis":[[1,2,3]]}"#]), 3);
    assert_eq!(code(&["classify", "--input", r#"{"basis":[[0,0,0,0,0,0]]}"#]), 3);
    assert_eq!(code(&["classify", "--input", r#"{"basis":"#]), 2);
    assert_eq!(code(&["classify", "--input", r#"{"rows":[]}"#]), 2);
    assert_eq!(code(&["classify", "--input", "/nonexistent/input.json"]), 2);
    assert_eq!(code(&["classify", "--field", "gf:4", "--input", POINT_S01]), 2);
    assert_eq!(code(&["classify"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn input_from_file() {
    let dir = std::env::temp_dir().join(format!("heis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("line.json");
    std::fs::write(&path, P1_LINE).unwrap();
    let (r, code) = json_run("classify", "gf:3", Some(path.to_str().unwrap()));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["tag"], "line:P1(t=0,d=1)");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn aut_examples() {
    let (r, code) = json_run("aut", "gf:2", Some(POINT_S01));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["order"], 576);
    assert_eq!(r["result"]["predicate"], "block-triangular");
    assert_eq!(r["result"]["predicate_check"]["disagreements"], 0);

    // T+S: the tensor-product group GL2 ⊗ GL2, of order |GL2(F3)|²/2.
    let ts = r#"{"basis":[[0,1,0,0,0,0],[0,0,1,1,0,0],[0,0,0,0,1,0]]}"#;
    let (r, _) = json_run("aut", "gf:3", Some(ts));
    assert_eq!(r["result"]["label"], "plane:T+S");
    assert_eq!(r["result"]["order"], 48 * 48 / 2);

    // A kernel away from its representative gets conjugated generators.
    let moved = r#"{"basis":[[0,0,0,0,0,1]]}"#;
    let (r, _) = json_run("aut", "gf:2", Some(moved));
    assert_eq!((r["result"]["frame"].as_str(), r["result"]["order"].as_u64()), (Some("input"), Some(576)));

    let anisotropic = r#"{"basis":[[1,0,0,0,0,1],[0,1,0,0,-1,0],[0,0,1,1,0,0]]}"#;
    let (r, code) = json_run("aut", "q", Some(anisotropic));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["predicate"], "quaternion-units");
    assert!(r["result"]["order"].is_null());
    assert_eq!(r["result"]["predicate_check"]["disagreements"], 0);

    let out = heis(&["aut", "--field", "gf:2", "--input", PLANE_F]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("not reduced"));
}

#[test]
fn orbits_report() {
    let (r, code) = json_run("orbits", "gf:3", Some(POINT_S01));
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!((res["omega"].as_u64(), res["expected"].as_u64(), res["pass"].as_bool()), (Some(6), Some(6), Some(true)));
    let (r, _) = json_run("orbits", "gf:5", Some(POINT_S01));
    assert_eq!(r["result"]["omega"], 6);
    assert!(r["result"]["expected"].is_null());
    assert_eq!(heis(&["orbits", "--input", POINT_S01]).status.code(), Some(5));
}

#[test]
fn verify_table_exit_codes() {
    // The closed-form table disagrees with brute force on some rows; the run
    // lists them and exits 1.
    let (r, code) = json_run("verify-table", "gf:3", None);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["summary"], "15 rows, 15 checked, 2 failures");
    let out = heis(&["verify-table", "--field", "gf:2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).ends_with("summary: 15 rows, 15 checked, 4 failures\n"));
    assert!(stderr(&out).contains("plane:T+S omega=6 (table 7)"));
    assert_eq!(heis(&["verify-table", "--field", "q"]).status.code(), Some(5));
    assert_eq!(heis(&["verify-table", "--field", "gf:5"]).status.code(), Some(2));
}

#[test]
fn conj_examples() {
    let (r, code) = json_run("conj", "q", Some(r#"{"algebra":[-1,-1],"v":[0,1,0,0],"x":[0,0,1,0]}"#));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["a"], "h1 + h2");
    assert_eq!(r["result"]["check"][0]["a v a^-1"], "h2");
    let (r, _) = json_run("conj", "q", Some(r#"{"algebra":[-1,-1],"v":[0,1,2,0],"x":[0,1,2,0]}"#));
    assert_eq!(r["result"]["a"], "1");
    let (r, code) = json_run("conj", "q", Some(r#"{"algebra":[-1,-1],"v":[0,1,0,0],"x":[0,2,0,0]}"#));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["conjugate"], false);
    assert!(r["result"]["reason"].as_str().unwrap().starts_with("norms differ"));
    let (r, _) = json_run(
        "conj",
        "q",
        Some(r#"{"algebra":[-1,-1],"v":[0,1,0,0],"x":[0,0,1,0],"w":[0,0,1,0],"y":[0,0,0,1]}"#),
    );
    assert_eq!(r["result"]["check"][1]["a w a^-1"], "h3");

    let out = heis(&["conj", "--input", r#"{"algebra":[1,1],"v":[1,-1,0,1],"x":[1,0,0,0]}"#]);
    assert_eq!(out.status.code(), Some(6));
    assert!(stderr(&out).contains("[[0,-1],[1,2]]"));
}

#[test]
fn forms_examples() {
    let (r, _) = json_run("forms", "gf:2^2", Some(r#"{"form":[1,1,"x"]}"#));
    assert_eq!(r["result"]["arf"], "x");
    let (r, _) = json_run("forms", "gf:2", Some(r#"{"forms":[[1,1,1],[0,1,0]]}"#));
    assert_eq!(r["result"]["equivalent"], false);
    let (r, _) = json_run("forms", "gf:2", Some(r#"{"forms":[[1,1,0],[0,1,0]]}"#));
    assert_eq!(r["result"]["equivalent"], true);
    assert!(r["result"]["witness"].is_array());
    let (r, _) = json_run("forms", "q", Some(r#"{"hermitian":{"ext":[0,1],"diag":[1,1]}}"#));
    assert_eq!(r["result"]["class"], "anisotropic(det=1,scale=1)");
    assert_eq!(heis(&["forms", "--field", "gf:3", "--input", r#"{"form":[1,1,1]}"#]).status.code(), Some(2));
}

#[test]
fn runs_are_deterministic_and_echo_config() {
    let args = ["aut", "--field", "gf:3", "--input", P1_LINE, "--seed", "7", "--sample", "50", "--output", "json"];
    let (a, b) = (heis(&args), heis(&args));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["config"], serde_json::json!({"budget": 1_000_000, "seed": 7, "sample": 50}));
    assert_eq!(r["input"]["basis"][0][0], 1);

    let out = Command::new(env!("CARGO_BIN_EXE_heis"))
        .args(["classify", "--field", "gf:3", "--input", P1_LINE, "--output", "json", "--budget", "5"])
        .env("HEIS_BUDGET", "12345")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["config"]["budget"], 12345);
}

#[test]
fn text_is_a_rendering_of_the_json() {
    let json_out = heis(&["classify", "--field", "gf:3", "--input", P1_LINE, "--output", "json"]);
    let r: Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let text = stdout(&heis(&["classify", "--field", "gf:3", "--input", P1_LINE]));
    for (k, v) in r["result"].as_object().unwrap() {
        if let Some(s) = v.as_str() {
            assert!(text.contains(&format!("  {k}: {s}\n")), "{k}");
        }
    }
    assert!(text.starts_with("schema: heis/v1/classify\nfield: gf:3\n"));
}
