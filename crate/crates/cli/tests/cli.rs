use std::process::Command;

use serde_json::Value;
use skewdet_cli::{run_command, Command as Cmd, CommandRequest, Input, EXIT_DOMAIN, EXIT_OK, EXIT_USER};

fn skewdet(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_skewdet")).args(args).output().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report)
}

const DIAG: &str = r#"{"ring": {"field": {"kind": "rationals"}}, "n": 2, "entries": [["x^2 + 1", "0"], ["0", "x"]]}"#;

const OSCILLATOR: &str = r#"{
  "field": {"kind": "rational_function", "base": {"kind": "rationals"}, "variable": "x"},
  "twist": "derivative",
  "n": 2,
  "coefficients": [[["0", "-1"], ["1", "0"]], [["1", "0"], ["0", "1"]]]
}"#;

#[test]
fn degdet_of_a_diagonal_matrix() {
    let (code, r) = skewdet(&["degdet", "--no-timing", "--json", DIAG]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["degdet"], 3);
    assert_eq!(r["result"]["free_rank_s"], 0);
    assert!(r.get("timing").is_none());
}

#[test]
fn oracle_section_agrees() {
    let (code, r) = skewdet(&["degdet", "--oracle", "--json", DIAG]);
    assert_eq!(code, 0);
    assert_eq!(r["oracle"]["quotient_dim"]["value"], "3");
    assert_eq!(r["oracle"]["commutative"]["agrees"], true);
    assert!(r["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn oscillator_has_two_solutions() {
    let (code, r) = skewdet(&["ode-dim", "--no-timing", "--json", OSCILLATOR]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["dimension"], 2);
    assert_eq!(r["result"]["twist_kind"], "differential");
}

#[test]
fn malformed_entry_reports_position() {
    let bad = r#"{"ring": {"field": {"kind": "prime_field", "p": 5}}, "n": 1, "entries": [["x + + 1"]]}"#;
    let (code, r) = skewdet(&["degdet", "--json", bad]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "ParseError");
    assert!(r["error"]["position"].is_u64());
}

#[test]
fn non_unit_is_a_domain_error() {
    let (code, r) = skewdet(&["invert", "--json", DIAG]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], "NotAUnit");
}

#[test]
fn kernel_rank_needs_frobenius() {
    let (code, r) = skewdet(&["kernel-rank", "--json", DIAG]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], "WrongTwist");
}

#[test]
fn kernel_rank_is_a_decimal_string() {
    let phi = r#"{"ring": {"field": {"kind": "prime_field", "p": 5}, "alpha": "frobenius", "indeterminate": "τ"}, "n": 2, "entries": [["τ^3", "0"], ["1", "τ^2"]]}"#;
    let (code, r) = skewdet(&["kernel-rank", "--no-timing", "--json", phi]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["rank"], "5^5");
    assert_eq!(r["result"]["rank_decimal"], "3125");
}

#[test]
fn invert_returns_verified_inverse() {
    let unit = r#"{"ring": {"field": {"kind": "prime_field", "p": 5}, "alpha": "frobenius", "indeterminate": "τ"}, "n": 2, "entries": [["1", "τ"], ["0", "2"]]}"#;
    let (code, r) = skewdet(&["invert", "--no-timing", "--json", unit]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verified"], true);
    assert_eq!(r["result"]["inverse"]["entries"][0][1], "2*τ");
}

#[test]
fn file_input_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("a.json");
    let output = dir.path().join("out.json");
    std::fs::write(&input, DIAG).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_skewdet"))
        .args(["echelon", "--no-timing", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(&output)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(r["result"]["degdet"], 3);
    assert_eq!(r["result"]["pivots"].as_array().unwrap().len(), 2);
}

#[test]
fn missing_file_is_a_user_error() {
    let (code, r) = skewdet(&["degdet", "--input", "/nonexistent/matrix.json"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "InputError");
}

#[test]
fn input_and_json_conflict() {
    let out = Command::new(env!("CARGO_BIN_EXE_skewdet"))
        .args(["degdet", "--input", "a.json", "--json", DIAG])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn library_entry_point() {
    let mut req = CommandRequest::new(Cmd::Degdet);
    req.input = Some(Input::Inline(DIAG.into()));
    req.timing = false;
    let report = run_command(&req);
    assert_eq!(report.exit_code, EXIT_OK);
    assert!(report.to_json().ends_with("}\n"));

    req.input = None;
    assert_eq!(run_command(&req).exit_code, EXIT_USER);

    let mut req = CommandRequest::new(Cmd::Selftest);
    req.max_n = Some(0);
    assert_eq!(run_command(&req).exit_code, EXIT_USER);

    let mut req = CommandRequest::new(Cmd::TmoduleRank);
    req.input = Some(Input::Inline(
        r#"{"phi": {"ring": {"field": {"kind": "prime_field", "p": 3}, "alpha": "frobenius"}, "n": 1, "entries": [["0"]]}}"#.into(),
    ));
    assert_eq!(run_command(&req).exit_code, EXIT_DOMAIN);
}

#[test]
fn tmodule_rank_of_carlitz() {
    let carlitz = r#"{"phi": {"ring": {"field": {"kind": "rational_function", "base": {"kind": "prime_field", "p": 3}, "variable": "θ"}, "alpha": "frobenius", "indeterminate": "τ"}, "n": 1, "entries": [["θ + τ"]]}}"#;
    let (code, r) = skewdet(&["tmodule-rank", "--no-timing", "--json", carlitz]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["r"], 1);
    assert_eq!(r["result"]["consistent"], true);
}
