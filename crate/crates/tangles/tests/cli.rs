//! End-to-end tests of the command-line binary: answers, certificates,
//! formats, exit codes, and determinism of the self-test.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tangles"))
}

/// A scratch file under the target-specific temp dir, cleaned up by the OS;
/// names carry the test so parallel tests never collide.
fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("tangles-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(str::to_string)
        .collect()
}

const K13: &str = r#"{"n": 4, "edges": [[0,1],[0,2],[0,3]]}"#;
const K4: &str = r#"{"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#;
const P4_EDGE_LIST: &str = "0 1\n1 2\n2 3\n";

#[test]
fn branch_width_of_the_three_leaf_star_is_one() {
    let input = scratch("k13.json", K13);
    let out = run(&["width", "bw", input.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout_lines(&out)[0], "1");
}

#[test]
fn duality_on_k4_at_four_is_a_tangle() {
    let input = scratch("k4-duality.json", K4);
    let out = run(&["duality", "tw", "4", input.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "tangle");
    assert!(lines[1].starts_with('{'), "certificate is JSON: {lines:?}");
}

#[test]
fn tree_on_k4_at_five_renders_dot() {
    // At k = 5 the whole of K4 fits in one bag, so the certificate is the
    // one-node tree — still a tree over the family, still valid DOT.
    let input = scratch("k4-tree.json", K4);
    let out = run(&["tree", "tw", "5", input.to_str().unwrap(), "--format", "dot"]);
    assert!(out.status.success(), "{out:?}");
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "tree");
    assert_eq!(lines[1], "digraph stree {");
    assert_eq!(lines.last().unwrap(), "}");
}

#[test]
fn tree_with_real_splits_renders_dot_edges() {
    let input = scratch("p4-dot.txt", P4_EDGE_LIST);
    let out = run(&["tree", "tw", "4", input.to_str().unwrap(), "--format", "dot"]);
    assert!(out.status.success(), "{out:?}");
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "tree");
    assert_eq!(lines[1], "digraph stree {");
    assert!(
        lines.iter().any(|l| l.contains("->") && l.contains("sep")),
        "{lines:?}"
    );
}

#[test]
fn edge_list_input_works() {
    let input = scratch("p4.txt", P4_EDGE_LIST);
    let out = run(&["width", "tw", input.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout_lines(&out)[0], "1");
}

#[test]
fn certificate_goes_to_the_out_file() {
    let input = scratch("p4-out.txt", P4_EDGE_LIST);
    let cert = std::env::temp_dir().join(format!("tangles-cli-cert-{}.json", std::process::id()));
    let out = run(&[
        "width",
        "tw",
        input.to_str().unwrap(),
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    // Only the answer on stdout; the certificate in the file.
    assert_eq!(stdout_lines(&out), vec!["1"]);
    let written = std::fs::read_to_string(&cert).unwrap();
    assert!(written.trim_start().starts_with('{'), "{written}");
    let _ = std::fs::remove_file(&cert);
}

#[test]
fn no_tangle_prints_none() {
    let input = scratch("p4-none.txt", P4_EDGE_LIST);
    let out = run(&["tangle", "tw", "5", input.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout_lines(&out), vec!["none"]);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["width", "tw", "/nonexistent/nowhere.json"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn malformed_json_is_an_input_error() {
    let input = scratch("broken.json", r#"{"n": 4, "edges": [[0,"#);
    let out = run(&["width", "tw", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn unknown_parameter_is_a_usage_error() {
    let input = scratch("k13-usage.json", K13);
    let out = run(&["width", "zz", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
}

#[test]
fn exhausting_the_node_cap_is_exit_three() {
    let input = scratch("p4-cap.txt", P4_EDGE_LIST);
    let out = run(&["tree", "tw", "3", input.to_str().unwrap(), "--max-nodes", "2"]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("cap"),
        "{out:?}"
    );
}

#[test]
fn oversized_graph_needs_the_explicit_flag() {
    let n9: String = (0..8).map(|i| format!("{i} {}\n", i + 1)).collect();
    let input = scratch("p9.txt", &n9);
    let out = run(&["width", "tw", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let out = run(&["width", "tw", input.to_str().unwrap(), "--allow-large"]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout_lines(&out)[0], "1");
}

#[test]
fn matroid_width_from_a_json_recipe() {
    let input = scratch(
        "k4-matroid.json",
        r#"{"kind": "graphic", "graph": {"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}}"#,
    );
    let out = run(&["width", "mtw", input.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout_lines(&out)[0], "3");

    let uniform = scratch("u24.json", r#"{"kind": "uniform", "r": 2, "n": 4}"#);
    let out = run(&["width", "mtw", uniform.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
}

#[test]
fn cluster_reports_coherent_then_segmented() {
    let pgm = "P2\n3 3\n255\n0 200 200\n0 200 200\n0 200 200\n";
    let image = scratch("grid.pgm", pgm);
    let out = run(&["cluster", image.to_str().unwrap(), "5"]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout_lines(&out)[0], "coherent");

    let out = run(&["cluster", image.to_str().unwrap(), "2000"]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout_lines(&out)[0], "segmented");
}

#[test]
fn selftest_is_deterministic_under_a_seed() {
    let a = run(&["selftest", "--seed", "7", "--count", "6"]);
    let b = run(&["selftest", "--seed", "7", "--count", "6"]);
    assert!(a.status.success(), "{a:?}");
    assert_eq!(a.stdout, b.stdout);
    assert!(
        String::from_utf8_lossy(&a.stdout).contains("every duality exact"),
        "{a:?}"
    );
}
