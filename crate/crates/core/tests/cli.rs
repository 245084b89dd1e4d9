// SPDX-License-Identifier: Apache-2.0

//! End-to-end runs of the `topk-closeness` binary.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn graph_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(file: &NamedTempFile, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topk-closeness"))
        .arg("--input")
        .arg(file.path())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const P4: &str = "a b\nb c\nc d\n";
const STAR4: &str = "# star\nhub a\nhub b\nhub c\n";

#[test]
fn path_top_one_keeps_the_tie() {
    let f = graph_file(P4);
    let o = run(&f, &["--k", "1", "--variant", "nbcut"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\tb\t0.75\n1\tc\t0.75\n");
}

#[test]
fn star_textbook_lists_tied_leaves() {
    let f = graph_file(STAR4);
    let o = run(&f, &["--variant", "textbook", "--k", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "1\thub\t1");
    // Leaves: S = 1 + 2·2 = 5, closeness 9/15.
    assert_eq!(lines[1], "2\ta\t0.6");
    assert!(lines[1..].iter().all(|l| l.starts_with("2\t")));
}

#[test]
fn harmonic_on_the_path() {
    let f = graph_file(P4);
    let o = run(&f, &["--measure", "harmonic", "--k", "2"]);
    assert_eq!(stdout(&o), "1\tb\t2.5\n1\tc\t2.5\n");
}

#[test]
fn directed_flag_changes_reachability() {
    let f = graph_file(P4);
    let o = run(&f, &["--directed", "--k", "1"]);
    // a reaches 3 nodes with S = 6: 9 / (3·6).
    assert_eq!(stdout(&o), "1\ta\t0.5\n");
}

#[test]
fn json_output_and_stats() {
    let f = graph_file(P4);
    let o = run(&f, &["--output", "json", "--stats"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["measure"], "closeness");
    assert_eq!(doc["entries"].as_array().unwrap().len(), 2);
    assert_eq!(doc["entries"][0]["score"], 0.75);
    let stats: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(stats["n"], 4);
    assert_eq!(stats["m"], 3);
    assert!(stats["m_vis"].as_u64().unwrap() > 0);
    assert!(stats["improvement_factor"].as_f64().is_some());
}

#[test]
fn every_variant_prints_the_same_thing() {
    let f = graph_file("1 2\n2 3\n3 4\n4 5\n5 1\n1 6\n6 7\n8 9\n");
    let want = stdout(&run(&f, &["--variant", "textbook", "--k", "4"]));
    for v in ["degcut", "degbound", "nbcut", "nbbound", "auto"] {
        for t in ["1", "3"] {
            let got = stdout(&run(&f, &["--variant", v, "--k", "4", "--threads", t]));
            assert_eq!(got, want, "variant {v} threads {t}");
        }
    }
}

#[test]
fn usage_errors() {
    let f = graph_file(P4);
    assert_eq!(run(&f, &["--k", "0"]).status.code(), Some(2));
    assert_eq!(run(&f, &["--threads", "0"]).status.code(), Some(2));
    assert_eq!(run(&f, &["--measure", "betweenness"]).status.code(), Some(2));
}

#[test]
fn unreadable_input() {
    let o = Command::new(env!("CARGO_BIN_EXE_topk-closeness"))
        .args(["--input", "/definitely/not/here.txt"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn malformed_line_is_an_error() {
    let f = graph_file("a b\nlonely\n");
    let o = run(&f, &[]);
    assert_eq!(o.status.code(), Some(1));
}
