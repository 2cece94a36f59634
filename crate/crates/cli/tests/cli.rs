//! End-to-end tests of the `regmat` binary: subcommand behavior, output
//! formats, exit codes, and parse diagnostics.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const WORKED_EXAMPLE: &str = "\
universe 4
1 1
1 3
2 1
2 3
2 4
3 1
3 3
4 4
";

/// Smallest relation whose three-step derivation misses a closed set: the
/// flat {3, 4} joins an isolated reflexive point with a lattice atom.
const INCOMPLETE_DERIVATION: &str = "\
universe 4
1 1
2 2
3 3
4 1
4 2
";

fn regmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_relation(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).unwrap()
}

fn stderr_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).unwrap()
}

fn json_of(output: &Output) -> Value {
    serde_json::from_str(stdout_of(output)).expect("valid json on stdout")
}

fn sets_of(value: &Value) -> Vec<Vec<String>> {
    value
        .as_array()
        .unwrap()
        .iter()
        .map(|set| {
            set.as_array()
                .unwrap()
                .iter()
                .map(|label| label.as_str().unwrap().to_string())
                .collect()
        })
        .collect()
}

fn labels(members: &[&str]) -> Vec<String> {
    members.iter().map(|m| m.to_string()).collect()
}

#[test]
fn check_reports_relation_properties() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "ex.rel", WORKED_EXAMPLE);
    let output = regmat(&["check", "--relation", &path]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("serial: true"));
    assert!(text.contains("transitive: true"));
    assert!(text.contains("reflexive: false"));
    assert!(text.contains("symmetric: false"));
}

#[test]
fn check_accepts_a_non_serial_relation() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "empty.rel", "universe 2\n");
    let output = regmat(&["check", "--relation", &path]);
    assert!(output.status.success());
    assert!(stdout_of(&output).contains("serial: false"));
}

#[test]
fn regular_json_lists_the_fixed_points() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "ex.rel", WORKED_EXAMPLE);
    let output = regmat(&["regular", "--relation", &path, "--format", "json"]);
    assert!(output.status.success());
    let doc = json_of(&output);
    assert_eq!(doc["universe"], serde_json::json!(["1", "2", "3", "4"]));
    assert_eq!(
        sets_of(&doc["regular"]),
        vec![
            labels(&[]),
            labels(&["4"]),
            labels(&["1", "3"]),
            labels(&["1", "2", "3", "4"]),
        ]
    );
}

#[test]
fn lattice_text_shows_structure_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "ex.rel", WORKED_EXAMPLE);
    let output = regmat(&["lattice", "--relation", &path]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("hasse edges (4):"));
    assert!(text.contains("{} < {4}"));
    assert!(text.contains("modular: true"));
    assert!(text.contains("distributive: true"));
    assert!(text.contains("semimodular: true"));
}

#[test]
fn lattice_dot_matches_the_four_element_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "ex.rel", WORKED_EXAMPLE);
    let output = regmat(&["lattice", "--relation", &path, "--format", "dot"]);
    assert!(output.status.success());
    let dot = stdout_of(&output);
    assert_eq!(dot.matches("[label=").count(), 4);
    assert_eq!(dot.matches(" -> ").count(), 4);
}

#[test]
fn lattice_out_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "ex.rel", WORKED_EXAMPLE);
    let out_path = dir.path().join("diagram.dot");
    let output = regmat(&[
        "lattice",
        "--relation",
        &path,
        "--format",
        "dot",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(stdout_of(&output).is_empty());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.starts_with("digraph lattice {"));
}

#[test]
fn matroid_json_lists_independents_bases_and_ranks() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "ex.rel", WORKED_EXAMPLE);
    let output = regmat(&["matroid", "--relation", &path, "--format", "json"]);
    assert!(output.status.success());
    let doc = json_of(&output);
    let independent = sets_of(&doc["matroid"]["independent"]);
    assert_eq!(independent.len(), 10);
    assert!(independent.contains(&labels(&["1", "2"])));
    assert!(!independent.contains(&labels(&["1", "3"])));
    assert_eq!(sets_of(&doc["matroid"]["bases"]).len(), 5);
    assert_eq!(doc["matroid"]["ranks"].as_array().unwrap().len(), 16);
    assert_eq!(doc["matroid"]["axioms"]["pass"], Value::Bool(true));
}

#[test]
fn closed_agrees_across_routes_on_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "ex.rel", WORKED_EXAMPLE);
    let output = regmat(&["closed", "--relation", &path, "--format", "json"]);
    assert!(output.status.success());
    let doc = json_of(&output);
    let expected = vec![
        labels(&[]),
        labels(&["2"]),
        labels(&["4"]),
        labels(&["1", "3"]),
        labels(&["1", "2", "3", "4"]),
    ];
    assert_eq!(sets_of(&doc["closed"]["bruteforce"]), expected);
    assert_eq!(sets_of(&doc["closed"]["candidate"]), expected);
    assert_eq!(
        sets_of(&doc["closed"]["discrepancy"]),
        Vec::<Vec<String>>::new()
    );
    assert_eq!(doc["closed"]["candidate_within_oracle"], Value::Bool(true));
}

#[test]
fn closed_exits_one_when_the_derivation_is_incomplete() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "gap.rel", INCOMPLETE_DERIVATION);
    let output = regmat(&["closed", "--relation", &path, "--format", "json"]);
    assert_eq!(output.status.code(), Some(1));
    let doc = json_of(&output);
    assert_eq!(
        sets_of(&doc["closed"]["discrepancy"]),
        vec![labels(&["3", "4"])]
    );
    assert_eq!(doc["closed"]["candidate_within_oracle"], Value::Bool(true));
}

#[test]
fn verify_passes_the_catalog_on_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "ex.rel", WORKED_EXAMPLE);
    let output = regmat(&["verify", "--relation", &path]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert_eq!(text.matches("pass").count(), 13); // 12 checks + summary line
    assert!(text.contains("summary: 12 passed, 0 failed"));
}

#[test]
fn verify_json_carries_ids_verdicts_and_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "ex.rel", WORKED_EXAMPLE);
    let output = regmat(&["verify", "--relation", &path, "--format", "json"]);
    assert!(output.status.success());
    let doc = json_of(&output);
    let propositions = doc["verify"]["propositions"].as_array().unwrap();
    assert_eq!(propositions.len(), 12);
    let ids: Vec<&str> = propositions
        .iter()
        .map(|p| p["id"].as_str().unwrap())
        .collect();
    assert_eq!(
        ids,
        [
            "P2.3", "P2.4", "P3.1", "P3.3", "P3.6", "P4.1", "P4.2", "P4.3", "P4.4", "P4.5", "P4.6",
            "C4.7"
        ]
    );
    for p in propositions {
        assert_eq!(p["verdict"], "pass");
        assert!(p["counterexamples"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_random_campaign_exits_one_on_discrepancy_findings() {
    let output = regmat(&[
        "verify", "--random", "10", "--size", "5", "--seed", "0", "--format", "json",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let doc = json_of(&output);
    assert_eq!(doc["universe"], Value::Null);
    assert_eq!(doc["verify"]["summary"]["failed_propositions"], 0);
    assert_eq!(doc["verify"]["summary"]["discrepancy_instances"], 1);
}

#[test]
fn verify_random_campaign_passes_cleanly() {
    let output = regmat(&["verify", "--random", "5", "--size", "5", "--seed", "7"]);
    assert!(output.status.success());
    assert!(
        stdout_of(&output).contains("5 instances, 0 failed checks, 0 instances with discrepancy")
    );
}

#[test]
fn example_reproduces_both_worked_examples() {
    let output = regmat(&["example"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("example 3.5:"));
    assert!(text.contains("example 4.8:"));
    assert!(text.contains("N(2) = {1, 3, 4}"));
    assert!(text.contains("regular sets (4):"));
    assert!(text.contains("independent sets (10):"));
    assert!(text.contains("closed sets, brute force (5):"));
    assert!(text.contains("discrepancy (0):"));

    let only_35 = regmat(&["example", "--which", "3.5"]);
    assert!(stdout_of(&only_35).contains("example 3.5:"));
    assert!(!stdout_of(&only_35).contains("example 4.8:"));
    let only_48 = regmat(&["example", "--which", "4.8"]);
    assert!(!stdout_of(&only_48).contains("example 3.5:"));
    assert!(stdout_of(&only_48).contains("example 4.8:"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();

    let missing = regmat(&["check", "--relation", "/nonexistent/void.rel"]);
    assert_eq!(missing.status.code(), Some(2));

    let bad_edge = write_relation(dir.path(), "bad.rel", "universe 4\n5 1\n");
    let output = regmat(&["check", "--relation", &bad_edge]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("line 2: unknown element label `5`"));

    let empty_universe = write_relation(dir.path(), "zero.rel", "universe 0\n");
    let output = regmat(&["regular", "--relation", &empty_universe]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("empty universe"));

    let duplicated = write_relation(dir.path(), "dup.rel", "universe 2\nuniverse 2\n");
    let output = regmat(&["regular", "--relation", &duplicated]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("duplicate universe declaration"));

    let no_mode = regmat(&["verify"]);
    assert_eq!(no_mode.status.code(), Some(2));

    let unknown_flag = regmat(&["regular", "--bogus"]);
    assert_eq!(unknown_flag.status.code(), Some(2));

    let bad_format = regmat(&["regular", "--relation", &bad_edge, "--format", "dot"]);
    assert_eq!(bad_format.status.code(), Some(2));
}

#[test]
fn hypothesis_violations_exit_two_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_relation(dir.path(), "chain.rel", "universe 3\n1 2\n2 3\n3 3\n");
    for subcommand in ["lattice", "matroid", "closed", "verify"] {
        let output = regmat(&[subcommand, "--relation", &path]);
        assert_eq!(output.status.code(), Some(2), "{subcommand} should reject");
        assert!(
            stderr_of(&output).contains("not transitive"),
            "{subcommand} stderr: {}",
            stderr_of(&output)
        );
    }
    // regular does not require the hypotheses
    let output = regmat(&["regular", "--relation", &path]);
    assert!(output.status.success());
}

#[test]
fn rewriting_a_file_in_canonical_form_preserves_every_report() {
    let dir = tempfile::tempdir().unwrap();
    let messy = write_relation(
        dir.path(),
        "messy.rel",
        "# comment\nuniverse 4\n4 4   # self loop\n1 3\n1 1\n2 4\n2 1\n3 3\n2 3\n3 1\n\n",
    );
    let canonical = write_relation(dir.path(), "canonical.rel", WORKED_EXAMPLE);
    for subcommand in ["check", "regular", "lattice", "matroid", "closed", "verify"] {
        let a = regmat(&[subcommand, "--relation", &messy]);
        let b = regmat(&[subcommand, "--relation", &canonical]);
        assert_eq!(a.stdout, b.stdout, "{subcommand} differs");
        assert_eq!(a.status.code(), b.status.code());
    }
}
