//! End-to-end checks of the command-line surface: subcommands, flags, file
//! formats, exit codes.

use std::process::{Command, Output};

fn cycsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycsub"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn report_z12() {
    let out = cycsub(&["report", "Z12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("edges (hasse): 7"), "{text}");
    assert!(text.contains("edges (formula): 7"), "{text}");
    assert!(text.contains("agreement: true"), "{text}");
}

#[test]
fn report_rejects_bad_spec_with_exit_1() {
    let out = cycsub(&["report", "Z0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_order_12() {
    let out = cycsub(&["verify", "12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: MinimumSharedWithNonCyclic"), "{text}");
    assert!(text.contains("Dic3"), "{text}");
    assert!(text.contains("A4"), "{text}");
}

#[test]
fn verify_out_of_range_order_fails() {
    let out = cycsub(&["verify", "500"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn scan_with_parity_filters() {
    let out = cycsub(&["scan", "--max", "15"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("summary:"), "{text}");
    assert!(text.contains("MinimumSharedWithNonCyclic=2"), "{text}");

    let out = cycsub(&["scan", "--max", "15", "--odd-only"]);
    let text = stdout(&out);
    assert!(text.contains("MinimumIsCyclicOnly=8"), "{text}");
    assert!(!text.contains("order   2:"), "{text}");

    let out = cycsub(&["scan", "--max", "15", "--even-only"]);
    let text = stdout(&out);
    assert!(!text.contains("order   1:"), "{text}");

    let out = cycsub(&["scan", "--max", "15", "--odd-only", "--even-only"]);
    assert!(!out.status.success());
}

#[test]
fn scan_annotates_incomplete_orders() {
    let out = cycsub(&["scan", "--max", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order  16: MinimumIsCyclicOnly  [incomplete catalog]"), "{text}");
}

#[test]
fn dot_z4_golden() {
    let out = cycsub(&["dot", "Z4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "graph \"Z4\" {\n  \"C1#0\";\n  \"C2#0\";\n  \"C4#0\";\n  \"C1#0\" -- \"C2#0\";\n  \"C2#0\" -- \"C4#0\";\n}\n"
    );
}

#[test]
fn dot_q8_vertex_and_edge_counts() {
    let out = cycsub(&["dot", "Q8"]);
    let text = stdout(&out);
    assert_eq!(text.matches(" -- ").count(), 4, "{text}");
    // 5 vertex lines + 4 edge lines
    assert_eq!(text.matches(";\n").count(), 9, "{text}");
}

#[test]
fn bijection_s4_feasible() {
    let out = cycsub(&["bijection", "S4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verified: true"), "{text}");
    assert!(text.contains("class flow:"), "{text}");
}

#[test]
fn json_report_fields() {
    let out = cycsub(&["json", "report", "Z12"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["order"], 12);
    assert_eq!(value["edges_hasse"], 7);
    assert_eq!(value["edges_formula"], 7);
    assert_eq!(value["cyclic_edges"], 7);
    assert_eq!(value["label"], "Z12");
}

#[test]
fn json_scan_is_an_array_of_findings() {
    let out = cycsub(&["json", "scan", "--max", "10"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let findings = value.as_array().unwrap();
    assert_eq!(findings.len(), 10);
    assert_eq!(findings[5]["order"], 6);
    assert_eq!(findings[5]["verdict"], "MinimumSharedWithNonCyclic");
    assert_eq!(findings[5]["witnesses"][0], "D3");
}

#[test]
fn json_error_document_on_bad_spec() {
    let out = cycsub(&["json", "report", "Z0"]);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(value["error"].as_str().unwrap().contains("Z0"));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("cycsub-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z12.dot");
    let out = cycsub(&["dot", "Z12", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("graph \"Z12\" {"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn cayley_file_spec_round_trip() {
    let dir = std::env::temp_dir().join("cycsub-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z3.cayley");
    std::fs::write(&path, "3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let spec = format!("@{}", path.display());

    let out = cycsub(&["report", &spec]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("order: 3"));

    // --skip-assoc-check still accepts a valid table.
    let out = cycsub(&["report", &spec, "--skip-assoc-check"]);
    assert!(out.status.success());

    // Trailing garbage is rejected.
    std::fs::write(&path, "3\n0 1 2\n1 2 0\n2 0 1\nextra\n").unwrap();
    let out = cycsub(&["report", &spec]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn perm_file_spec() {
    let dir = std::env::temp_dir().join("cycsub-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.perms");
    std::fs::write(&path, "3\n1 0 2\n0 2 1\n").unwrap();
    let spec = format!("@{}", path.display());

    let out = cycsub(&["report", &spec]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("order: 6"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn closure_bound_flag_is_honored() {
    let dir = std::env::temp_dir().join("cycsub-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z4gen.perms");
    std::fs::write(&path, "4\n1 2 3 0\n").unwrap();
    let spec = format!("@{}", path.display());

    let out = cycsub(&["report", &spec, "--closure-bound", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound"));

    let out = cycsub(&["report", &spec]);
    assert!(out.status.success());
    std::fs::remove_file(&path).ok();
}
