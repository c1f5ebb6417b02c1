use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_langconvex"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

// a*b over {a,b}: not prefix-closed (b's prefix ε is not in L), prefix-free.
const A_STAR_B: &str = "type: dfa\nalphabet: a b\nstates: 3\nstart: 0\naccept: 1\n0 a 0\n0 b 1\n1 a 2\n1 b 2\n2 a 2\n2 b 2\n";

// a*: prefix-closed.
const A_STAR: &str = "type: dfa\nalphabet: a b\nstates: 1\nstart: 0\naccept: 0\ncomplete\n0 a 0\n";

#[test]
fn check_reports_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ab.txt", A_STAR_B);
    let o = run(&["check", "-p", "prefix-free", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("property: prefix-free\nholds: true\n"), "{out}");
    assert!(out.contains("checker.states: "));

    let o = run(&["check", "-p", "prefix-closed", "--witness", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("holds: false"));
    assert!(out.contains("witness.v: (eps)\nwitness.w: b\n"), "{out}");
}

#[test]
fn json_has_the_text_keys() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ab.txt", A_STAR_B);
    let o = run(&["check", "-p", "prefix-closed", "--witness", "--format", "json", s(&f)]);
    let j: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(j["property"], "prefix-closed");
    assert_eq!(j["holds"], false);
    assert_eq!(j["witness.w"], "b");
    assert!(j["checker.transitions"].as_u64().unwrap() > 0);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ab.txt", A_STAR_B);
    assert_eq!(run(&["check", "-p", "nonsense", s(&f)]).status.code(), Some(2));
    assert_eq!(run(&["check", "-p", "prefix-free"]).status.code(), Some(2));
    let bad = write(&dir, "bad.txt", "type: dfa\nalphabet: a\nstates: 1\nstart: 0\naccept: 0\n0 a\n");
    let o = run(&["check", "-p", "prefix-free", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6"));
    let eps = write(&dir, "eps.txt", "type: dfa\nalphabet: a\nstates: 2\nstart: 0\naccept: 1\n0 eps 1\n");
    let o = run(&["check", "-p", "prefix-free", s(&eps)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("eps not allowed in dfa"));
    assert_eq!(run(&["check", "-p", "prefix-free", "/nonexistent/x.txt"]).status.code(), Some(2));
}

#[test]
fn state_cap_exits_3() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ab.txt", A_STAR_B);
    let o = run(&["check", "-p", "subword-convex", "--state-cap", "4", s(&f)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));
}

#[test]
fn jobs_preserve_input_order() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", A_STAR);
    let b = write(&dir, "b.txt", A_STAR_B);
    let args = ["check", "-p", "prefix-closed", "--jobs", "3", s(&a), s(&b), s(&a), s(&b)];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let verdicts: Vec<&str> = out.lines().filter(|l| l.starts_with("holds:")).collect();
    assert_eq!(verdicts, ["holds: true", "holds: false", "holds: true", "holds: false"]);
    let files: Vec<&str> = out.lines().filter(|l| l.starts_with("file:")).collect();
    assert!(files[0].ends_with("a.txt") && files[1].ends_with("b.txt"));
    let serial = run(&["check", "-p", "prefix-closed", s(&a), s(&b), s(&a), s(&b)]);
    assert_eq!(stdout(&serial), out);
}

#[test]
fn witness_subcommand_verifies_and_decomposes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "gen.txt", "");
    let o = run(&["gen", "--family", "nsc-suffix-convex", "--n", "3", "--out", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "states: 14\n");
    let o = run(&["witness", "-p", "suffix-convex", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("witness.size: 15"), "{out}");
    assert!(out.contains("witness.verified: true"));
    assert!(out.contains("decomposition.u: "));
}

#[test]
fn gen_to_stdout_round_trips() {
    let o = run(&["gen", "--family", "unary-npc", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(langconvex::parse_automaton(&text).is_ok());
    assert_eq!(run(&["gen", "--family", "nope", "--n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "nsc-suffix-convex", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn almost_verdicts() {
    let dir = TempDir::new().unwrap();
    // {ε, aa}: finitely many prefix-convex witnesses.
    let f = write(&dir, "f.txt", "type: dfa\nalphabet: a\nstates: 4\nstart: 0\naccept: 0 2\n0 a 1\n1 a 2\n2 a 3\n3 a 3\n");
    let o = run(&["almost", "-p", "prefix-convex", s(&f)]);
    assert_eq!(stdout(&o), "property: almost-prefix-convex\nverdict: almost\n");
    assert_eq!(o.status.code(), Some(1));
    let g = write(&dir, "g.txt", A_STAR);
    let o = run(&["almost", "-p", "prefix-convex", s(&g)]);
    assert!(stdout(&o).contains("verdict: holds"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn nfa_inputs() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "n.txt", "");
    run(&["gen", "--family", "nfa-prefix-free-hard", "--n", "3", "--out", s(&f)]);
    let o = run(&["check", "-p", "prefix-free", "--witness", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness.w: "));
    // convex properties determinize with a warning
    let o = run(&["check", "-p", "prefix-convex", s(&f)]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("determinizing"));
    assert!(matches!(o.status.code(), Some(0 | 1)));
    let o = run(&["check", "-p", "prefix-convex", "--subset-cap", "2", s(&f)]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn grammars() {
    let dir = TempDir::new().unwrap();
    let fin = write(&dir, "fin.cfg", "S -> a A | b\nA -> b b\n");
    let o = run(&["check", "-p", "subword-free", "--witness", s(&fin)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness.v: b\nwitness.w: abb\n"), "{}", stdout(&o));
    let free = write(&dir, "free.cfg", "S -> a b | b a\n");
    assert_eq!(run(&["check", "-p", "subword-free", s(&free)]).status.code(), Some(0));
    let o = run(&["check", "-p", "prefix-convex", s(&free)]);
    assert_eq!(o.status.code(), Some(2));
    let inf = write(&dir, "inf.txt", "S -> a S | a\n");
    let o = run(&["check", "-p", "subword-free", "--grammar", s(&inf)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("grammar.infinite: true"));
}

#[test]
fn oracle_marks_one_sided_results() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ab.txt", A_STAR_B);
    let o = run(&["oracle", "-p", "prefix-closed", "--max-len", "4", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("oracle.one_sided: false"));
    let o = run(&["oracle", "-p", "prefix-free", "--max-len", "4", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle.one_sided: true"));
}

#[test]
fn stats_compares_counts() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ab.txt", A_STAR_B);
    let o = run(&["stats", "-p", "prefix-closed", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("states.status: MATCH"), "{out}");
    assert!(!out.contains("MISMATCH"));
    let o = run(&["stats", "-p", "prefix-convex", s(&f)]);
    assert!(stdout(&o).contains("transitions.status: NOTED"));
}

#[test]
fn dot_export() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ab.txt", A_STAR_B);
    let dot = dir.path().join("ab.dot");
    run(&["check", "-p", "prefix-free", "--dot", s(&dot), s(&f)]);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("2 -> 2 [label=\"a,b\"]"));
}
