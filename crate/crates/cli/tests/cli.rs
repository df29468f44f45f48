//! End-to-end tests of the binary: exact output bytes for the text
//! subcommands, parsed JSON for the machine-facing ones, exit codes, and
//! run-to-run determinism.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confcoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stderr).expect("stderr is a JSON record")
}

fn example_table() -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    write!(
        file,
        r#"[
            {{"q": 0, "t": 0, "monomial": "1", "class": "a1", "value": 2}},
            {{"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a1", "value": 3}},
            {{"q": 4, "t": 0, "monomial": "w(1,2)*w(3,4)", "class": "a1", "value": 5}},
            {{"q": 0, "t": 0, "monomial": "1", "class": "a2", "value": 7}},
            {{"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a2", "value": 11}},
            {{"q": 4, "t": 0, "monomial": "w(1,2)*w(3,4)", "class": "a2", "value": 13}}
        ]"#
    )
    .expect("write table");
    file
}

#[test]
fn reduce_prints_normal_forms() {
    let out = run(&["reduce", "--q", "3", "w(1,3)*w(2,3)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "w(1,2)*w(2,3) - w(1,2)*w(1,3)\n");

    let zero = run(&["reduce", "--q", "3", "w(1,2)*w(2,1)"]);
    assert_eq!(stdout(&zero), "0\n");

    let modular = run(&["reduce", "--q", "3", "--mod-p", "5", "w(1,3)*w(2,3) - 3*w(1,2)"]);
    assert_eq!(stdout(&modular), "2*w(1,2) + w(1,2)*w(2,3) + 4*w(1,2)*w(1,3)\n");
}

#[test]
fn runs_are_deterministic() {
    for args in [
        vec!["reduce", "--q", "4", "w(2,4)*w(1,4)*w(1,2)"],
        vec!["strata", "--q", "4"],
        vec!["coproduct", "--Q", "2", "--T", "2", "w(1,3)"],
        vec!["qdims", "--q", "5"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert!(first.status.success(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn basis_and_poincare_output() {
    let basis = run(&["basis", "--q", "3", "--degree", "2"]);
    assert_eq!(stdout(&basis), "w(1,2)\nw(1,3)\nw(2,3)\n");
    let all = run(&["basis", "--q", "3"]);
    assert_eq!(stdout(&all).lines().count(), 6);

    let poincare = run(&["poincare", "--q", "4"]);
    assert_eq!(stdout(&poincare), "1 + 6*t^2 + 11*t^4 + 6*t^6\n");
    let high_n = run(&["poincare", "--q", "3", "--n", "4"]);
    assert_eq!(stdout(&high_n), "1 + 3*t^3 + 2*t^6\n");
}

#[test]
fn qdims_reports_quotient_ranks() {
    let out = run(&["qdims", "--q", "2"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        rows,
        serde_json::json!([
            {"degree": 4, "rank": "1"},
            {"degree": 6, "rank": "1"},
        ])
    );
}

#[test]
fn sigma_prints_images() {
    assert_eq!(stdout(&run(&["sigma", "1", "1", "1", "1"])), "[1,3,2,4]\n");
    assert_eq!(stdout(&run(&["sigma", "1", "2", "2", "0"])), "[1,4,5,2,3]\n");
}

#[test]
fn strata_listing_and_poset() {
    let faces = run(&["strata", "--q", "3", "--max-codim", "1"]);
    assert_eq!(stdout(&faces), "{{1,2}}\n{{1,3}}\n{{2,3}}\n{{1,2,3}}\n");

    let all = run(&["strata", "--q", "4"]);
    assert_eq!(stdout(&all).lines().count(), 52);

    let dot = run(&["strata", "--q", "2", "--dot"]);
    assert_eq!(
        stdout(&dot),
        "digraph strata {\n  rankdir=TB;\n  \"{}\";\n  \"{{1,2}}\";\n  \"{}\" -> \"{{1,2}}\";\n}\n"
    );
}

#[test]
fn verify_faces_passes_on_small_ground_sets() {
    let out = run(&["verify-faces", "--q", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn coproduct_emits_split_records() {
    let out = run(&["coproduct", "--Q", "4", "w(1,2)*w(3,4)"]);
    let records: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        records,
        serde_json::json!([
            {"q": 0, "t": 0, "r": 4, "s": 0, "left": "1", "right": "w(1,2)*w(3,4)", "coeff": "1"},
            {"q": 2, "t": 0, "r": 2, "s": 0, "left": "w(1,2)", "right": "w(1,2)", "coeff": "1"},
            {"q": 4, "t": 0, "r": 0, "s": 0, "left": "w(1,2)*w(3,4)", "right": "1", "coeff": "1"},
        ])
    );
}

#[test]
fn eval_reports_value_audit_and_warnings() {
    let table = example_table();
    let path = table.path().to_str().unwrap();
    let out = run(&[
        "eval", "--Q", "4", "--beta", "w(1,2)*w(3,4)", "--table", path, "--a1", "a1", "--a2",
        "a2",
    ]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(record["value"], "94");
    assert_eq!(record["terms"].as_array().unwrap().len(), 3);
    assert_eq!(record["terms"][1]["product"], "33");
    assert_eq!(record["warnings"].as_array().unwrap().len(), 0);

    // Lenient evaluation against a class with no entries: value 0, one
    // warning per coproduct term.
    let lenient = run(&[
        "eval", "--Q", "4", "--beta", "w(1,2)*w(3,4)", "--table", path, "--a1", "zz", "--a2",
        "a2",
    ]);
    assert!(lenient.status.success());
    let record: serde_json::Value = serde_json::from_str(&stdout(&lenient)).unwrap();
    assert_eq!(record["value"], "0");
    assert_eq!(record["warnings"].as_array().unwrap().len(), 3);
}

#[test]
fn eval_exit_codes_classify_failures() {
    let table = example_table();
    let path = table.path().to_str().unwrap();

    let missing = run(&[
        "eval", "--Q", "4", "--beta", "w(1,2)*w(3,4)", "--table", path, "--a1", "zz", "--a2",
        "a2", "--strict",
    ]);
    assert_eq!(missing.status.code(), Some(4));
    assert_eq!(stderr_json(&missing)["error"]["kind"], "missing-entry");

    let shifted = run(&[
        "eval", "--Q", "4", "--beta", "w(1,2)*w(3,4)", "--table", path, "--a1", "a1@2", "--a2",
        "a2@1", "--degree-shift", "0",
    ]);
    assert_eq!(shifted.status.code(), Some(3));
    assert_eq!(stderr_json(&shifted)["error"]["kind"], "degree-mismatch");

    let ok_shift = run(&[
        "eval", "--Q", "4", "--beta", "w(1,2)*w(3,4)", "--table", path, "--a1", "a1@2", "--a2",
        "a2@2", "--degree-shift", "0",
    ]);
    assert!(ok_shift.status.success());

    let absent = run(&[
        "eval", "--Q", "4", "--beta", "w(1,2)*w(3,4)", "--table", "/nonexistent/t.json",
        "--a1", "a1", "--a2", "a2",
    ]);
    assert_eq!(absent.status.code(), Some(3));
    assert_eq!(stderr_json(&absent)["error"]["kind"], "io");

    let mut conflicted = tempfile::NamedTempFile::new().unwrap();
    write!(
        conflicted,
        r#"[{{"q": 2, "t": 0, "monomial": "w(1,2)", "class": "v", "value": 1}},
            {{"q": 2, "t": 0, "monomial": "w(2,1)", "class": "v", "value": 1}}]"#
    )
    .unwrap();
    let conflict = run(&[
        "eval", "--Q", "2", "--beta", "w(1,2)", "--table",
        conflicted.path().to_str().unwrap(), "--a1", "v", "--a2", "v",
    ]);
    assert_eq!(conflict.status.code(), Some(2));
    assert_eq!(stderr_json(&conflict)["error"]["kind"], "conflicting-entry");
}

#[test]
fn bracket_emits_certificate() {
    let out = run(&["bracket", "--Q", "2", "--T", "1"]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(record["value"], "0");
    assert_eq!(record["certificate"]["n"], 3);
    let tables = record["certificate"]["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 4);
    assert!(tables.iter().all(|t| t["ok"] == true));
    assert_eq!(tables[2]["ranks"], serde_json::json!({"4": "1", "6": "1"}));

    let even = run(&["bracket", "--Q", "1", "--n", "4"]);
    assert_eq!(even.status.code(), Some(3));
    assert_eq!(stderr_json(&even)["error"]["kind"], "even-dimension");
}

#[test]
fn malformed_input_exits_2_with_record() {
    let bad_expr = run(&["reduce", "--q", "3", "w(1,"]);
    assert_eq!(bad_expr.status.code(), Some(2));
    let record = stderr_json(&bad_expr);
    assert_eq!(record["error"]["kind"], "parse");
    assert!(record["error"]["message"].as_str().unwrap().contains("offset"));

    let bad_index = run(&["reduce", "--q", "3", "w(1,7)"]);
    assert_eq!(bad_index.status.code(), Some(3));
    assert_eq!(stderr_json(&bad_index)["error"]["kind"], "index-out-of-range");

    let bad_modulus = run(&["reduce", "--q", "3", "--mod-p", "6", "w(1,2)"]);
    assert_eq!(bad_modulus.status.code(), Some(3));
    assert_eq!(stderr_json(&bad_modulus)["error"]["kind"], "not-prime");

    let usage = run(&["reduce", "--definitely-not-a-flag"]);
    assert_eq!(usage.status.code(), Some(2));
}
