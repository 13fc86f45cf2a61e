use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motionforge"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn group_order_by_name_and_file() {
    let o = run(&["group", "order", "S5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "120");
    let o = run(&["group", "order", "data/m11.gens"]);
    assert_eq!(stdout(&o).trim(), "7920");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["group", "order", "Q9"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let o = run(&["group", "mu", "A8", "--cap-elements", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    assert_eq!(run(&["cc", "validate", "data/cc/p4-not-cc.cc"]).status.code(), Some(1));
}

#[test]
fn dihedral_pentagon_has_no_asymmetric_subset() {
    let o = run(&["color", "asymmetric", "D5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("NONE"));
}

#[test]
fn pipeline_trace_is_json_lines() {
    let path = std::env::temp_dir().join(format!("motionforge-trace-{}.jsonl", std::process::id()));
    let o = run(&["pipeline", "run", "data/seq/diag-s3.seq", "--trace", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.first().unwrap()["record"], "header");
    let last = records.last().unwrap();
    assert_eq!(last["record"], "result");
    assert_eq!(last["limit_stabilizer_order"], 1);
    assert!(records[1..records.len() - 1].iter().all(|r| r["record"] == "step"));
}

#[test]
fn runs_are_deterministic() {
    for args in [
        &["pipeline", "run", "data/seq/diag-s5.seq"][..],
        &["color", "motion-lemma", "S5", "--seed", "7"][..],
        &["construct", "mathieu", "M12"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn cc_motion_of_triangular_graph() {
    let o = run(&["cc", "motion", "data/cc/t5.cc"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("120"));
}
