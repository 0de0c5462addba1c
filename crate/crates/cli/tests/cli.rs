use std::path::Path;
use std::process::{Command, Output};

use bpminlab::{BranchingProgram, PartialTruthTable};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bpminlab"));
    c.env_remove("BPMINLAB_THREADS");
    c
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field(o: &Output, key: &str) -> String {
    let prefix = format!("{key}=");
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
        .unwrap_or_else(|| panic!("no {key} in\n{}", stdout(o)))
}

fn json(o: &Output) -> serde_json::Value {
    let text = stdout(o);
    let start = text.find("\n{").map(|i| i + 1).unwrap_or(0);
    serde_json::from_str(&text[start..]).unwrap()
}

fn scratch() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.bpis"), "bpis n=4\n").unwrap();
    std::fs::write(dir.path().join("edge.bpis"), "bpis n=4\n1 1 3 3\n").unwrap();
    dir
}

#[test]
fn reduce_writes_table_and_sidecar() {
    let dir = scratch();
    let o = run(&["reduce", "--graph", "empty.bpis", "--out", "g.tt"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(field(&o, "entries"), "4096");
    let t: PartialTruthTable = std::fs::read_to_string(dir.path().join("g.tt")).unwrap().parse().unwrap();
    assert_eq!(t.len(), 4096);
    let meta = std::fs::read_to_string(dir.path().join("g.tt.meta")).unwrap();
    assert_eq!(meta, "meta n=4 s_bp=12 s_formula_gates=11 graph=empty.bpis\n");
    assert_eq!(json(&o)["s_bp"], 12);
}

#[test]
fn gamma_eval_reports_the_matching_case() {
    let dir = scratch();
    let o = run(&["gamma-eval", "--graph", "edge.bpis", "--x", "0101", "--y", "0000", "--z", "1010"], dir.path());
    assert!(o.status.success());
    assert_eq!(field(&o, "value"), "1");
    assert_eq!(field(&o, "cases"), "(7)");
    let bad = run(&["gamma-eval", "--graph", "edge.bpis", "--x", "01", "--y", "0000", "--z", "1010"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn sat_pipeline_matches_satisfiability() {
    let dir = scratch();
    let cases = [
        ("sat.cnf", "p cnf 3 2\n1 2 3 0\n-1 2 -3 0\n", "no"),
        ("zero.cnf", "p cnf 3 1\n1 2 -3 0\n", "no"),
        ("unsat.cnf", "p cnf 2 4\n1 1 2 0\n1 1 -2 0\n-1 -1 2 0\n-1 -1 -2 0\n", "found"),
    ];
    for (name, text, verdict) in cases {
        std::fs::write(dir.path().join(name), text).unwrap();
        let o = run(&["sat2bp", "--in", name, "--out", "f.bp"], dir.path());
        assert!(o.status.success(), "{}", stderr(&o));
        let m = run(&["minimize", "--in", "f.bp", "--s", "0"], dir.path());
        assert!(m.status.success(), "{}", stderr(&m));
        assert_eq!(field(&m, "verdict"), verdict, "{name}");
    }
}

#[test]
fn written_programs_parse_back() {
    let dir = scratch();
    assert!(run(&["encode-2bp", "--graph", "edge.bpis", "--out", "two.bp"], dir.path()).status.success());
    assert!(run(&["solve-bpis", "--graph", "edge.bpis", "--out", "chain.bp"], dir.path()).status.success());
    assert!(run(&["reduce", "--graph", "edge.bpis", "--out", "g.tt"], dir.path()).status.success());
    let o = run(&["oabp-search", "--in", "g.tt", "--out", "w.bp"], dir.path());
    assert_eq!(field(&o, "verdict"), "found");
    let table: PartialTruthTable = std::fs::read_to_string(dir.path().join("g.tt")).unwrap().parse().unwrap();
    for name in ["two.bp", "chain.bp", "w.bp"] {
        let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let bp: BranchingProgram = text.parse().unwrap();
        assert_eq!(bp.to_string(), text);
        assert!(table.is_extended_by(&bp.to_truth_table().unwrap()), "{name}");
    }
}

#[test]
fn table_tools() {
    let dir = scratch();
    std::fs::write(dir.path().join("and.tt"), "tt n=2\n0001\n").unwrap();
    let q = run(&["query-complexity", "--in", "and.tt"], dir.path());
    assert_eq!(field(&q, "depth"), "2");
    let b = run(&["obdd-min", "--in", "and.tt"], dir.path());
    assert_eq!(field(&b, "size"), "2");
    let m = run(&["minimize", "--in", "and.tt"], dir.path());
    assert_eq!(field(&m, "size"), "2");
    let s = run(&["mbpsp-star", "--in", "and.tt", "--s", "1"], dir.path());
    assert_eq!(field(&s, "verdict"), "no");
}

#[test]
fn lemma_campaign_is_clean() {
    let dir = scratch();
    let o = run(&["verify", "--level", "lemmas-n2"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(field(&o, "gamma_prime_search"), "found");
    assert_eq!(field(&o, "violation_count"), "0");
}

#[test]
fn theorem_campaign_is_deterministic() {
    let dir = scratch();
    let args = ["verify", "--level", "theorem-n4", "--seed", "11", "--graphs", "3", "--out", "r.txt"];
    let a = run(&args, dir.path());
    assert!(a.status.success(), "{}", stdout(&a));
    let b = run(&args, dir.path());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(std::fs::read_to_string(dir.path().join("r.txt")).unwrap(), stdout(&a));
    assert_eq!(field(&a, "graphs"), "5");
    assert_eq!(field(&a, "disagreement_count"), "0");
}

#[test]
fn usage_errors_exit_2() {
    let dir = scratch();
    assert_eq!(run(&["verify", "--level", "theorem-n4"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["reduce", "--graph", "empty.bpis"], dir.path()).status.code(), Some(2));
    let o = bin()
        .args(["oabp-search", "--in", "x.tt"])
        .env("BPMINLAB_THREADS", "0")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_1_with_location() {
    let dir = scratch();
    let missing = run(&["reduce", "--graph", "nope.bpis", "--out", "x.tt"], dir.path());
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr(&missing).contains("nope.bpis"));
    std::fs::write(dir.path().join("bad.cnf"), "p cnf 3 1\n1 2 0\n").unwrap();
    let bad = run(&["sat2bp", "--in", "bad.cnf", "--out", "f.bp"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("line 2"), "{}", stderr(&bad));
    std::fs::write(dir.path().join("small.bpis"), "bpis n=2\n").unwrap();
    let small = run(&["reduce", "--graph", "small.bpis", "--out", "x.tt"], dir.path());
    assert_eq!(small.status.code(), Some(1));
    assert!(stderr(&small).contains("(7)"));
}

#[test]
fn exhausted_budget_exits_4() {
    let dir = scratch();
    let complete: String = std::iter::once("bpis n=4\n".to_string())
        .chain((1..=2).flat_map(|a| (1..=2).flat_map(move |b| (3..=4).flat_map(move |c| (3..=4).map(move |d| format!("{a} {b} {c} {d}\n"))))))
        .collect();
    std::fs::write(dir.path().join("k.bpis"), complete).unwrap();
    assert!(run(&["reduce", "--graph", "k.bpis", "--out", "k.tt"], dir.path()).status.success());
    let o = bin()
        .args(["oabp-search", "--in", "k.tt", "--budget-ms", "1"])
        .env("BPMINLAB_THREADS", "2")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4), "{}", stdout(&o));
    assert_eq!(field(&o, "verdict"), "inconclusive");
}
