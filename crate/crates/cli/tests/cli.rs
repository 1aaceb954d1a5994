use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_copocert");

const HORN: &str = "5\n1 -1 1 1 -1\n-1 1 -1 1 1\n1 -1 1 -1 1\n1 1 -1 1 -1\n-1 1 1 -1 1\n";

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("COPOCERT_MAX_CANDIDATES")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let horn = write(dir.path(), "horn.txt", HORN);
    let bad = write(dir.path(), "bad.txt", "2\n1 -2\n-2 1\n");
    let o = run(&["check", &horn]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("copositive: yes"));
    let o = run(&["check", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("copositive: no"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let asym = write(dir.path(), "asym.txt", "2\n1 2\n3 1\n");
    let garbage = write(dir.path(), "garbage.txt", "2\n1 x\n1 1\n");
    for p in [&asym, &garbage] {
        let o = run(&["check", p]);
        assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    }
    let o = run(&["check", "/nonexistent/matrix.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zeros_examples() {
    let dir = tempfile::tempdir().unwrap();
    let horn = write(dir.path(), "horn.txt", HORN);
    let id = write(dir.path(), "id.txt", "3\n1 0 0\n0 1 0\n0 0 1\n");
    let bad = write(dir.path(), "bad.txt", "2\n1 -2\n-2 1\n");
    let o = run(&["zeros", &horn]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("count=5"));
    assert!(out.contains("support.1=1,2"));
    assert!(out.contains("zero.1=1/2,1/2,0,0,0"));
    let o = run(&["zeros", "--minimal", &id]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no zeros"));
    let o = run(&["zeros", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NotCopositive"));
}

#[test]
fn extremal_examples() {
    let dir = tempfile::tempdir().unwrap();
    let horn = write(dir.path(), "horn.txt", HORN);
    let id = write(dir.path(), "id.txt", "2\n1 0\n0 1\n");
    let o = run(&["extremal", &horn]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("extremal: yes, nullity: 1"));
    let o = run(&["extremal", &id]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn graph_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "2\n1 -1\n-1 1\n");
    let dot = dir.path().join("g.dot");
    let o = run(&["graph", &m, "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("components: 1, bipartite: 1, dimension: 1"));
    let text = std::fs::read_to_string(&dot).unwrap();
    for node in ["X1_1", "X1_2", "X2_2"] {
        assert!(text.contains(node), "{node} missing from {text}");
    }
}

#[test]
fn normalize_recovers_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "2\n4 -6\n-6 9\n");
    let o = run(&["normalize", &m]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("scaling=2,3"), "{out}");
    let m = write(dir.path(), "irr.txt", "2\n2 -2\n-2 2\n");
    let o = run(&["normalize", &m]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("scaling=implicit"));
}

#[test]
fn verify_horn() {
    let dir = tempfile::tempdir().unwrap();
    let horn = write(dir.path(), "horn.txt", HORN);
    let o = run(&["verify", &horn]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equivalence holds: yes"));
    let bad = write(dir.path(), "bad.txt", "2\n1 -2\n-2 1\n");
    assert_eq!(run(&["verify", &bad]).status.code(), Some(1));
}

#[test]
fn census_writes_records_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n2.txt");
    let o = run(&["census", "-n", "2", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("canonical_offdiag=-1 copositive=1 extremal=1"));
    let o = run(&["census", "-n", "2", "-o", out.to_str().unwrap(), "--resume"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), text);
}

#[test]
fn census_guard() {
    let o = Command::new(BIN)
        .args(["census", "-n", "3"])
        .env("COPOCERT_MAX_CANDIDATES", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("ResourceGuard"));
    let o = run(&["census", "-n", "6"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(BIN)
        .args(["census", "-n", "3", "--allow-large"])
        .env("COPOCERT_MAX_CANDIDATES", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let horn = write(dir.path(), "horn.txt", HORN);
    for args in [
        vec!["check", horn.as_str()],
        vec!["zeros", horn.as_str()],
        vec!["extremal", horn.as_str()],
        vec!["graph", horn.as_str()],
        vec!["census", "-n", "4"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn machine_block_precedes_human_block() {
    let dir = tempfile::tempdir().unwrap();
    let horn = write(dir.path(), "horn.txt", HORN);
    let out = stdout(&run(&["check", &horn]));
    let m = out.find("[machine]").unwrap();
    let h = out.find("[human]").unwrap();
    assert!(m < h);
    let machine = &out[m..h];
    assert!(machine.lines().skip(1).filter(|l| !l.is_empty()).all(|l| l.contains('=')));
}
