use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn reeskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reeskit")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const POWERS_3_12: &str = "# n = 3, a = (1, 2)\nmode = powers\nn = 3\na = 1, 2\n";
const LINEAR_FORMS: &str = "mode = truncation\nn = 2\nf = x1, x2\nd = 2\n";

#[test]
fn construct_prints_the_example_matrix() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.txt", POWERS_3_12);
    let o = reeskit(&["construct", s(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let expected = "matrix B (3x4):\n\
                    \x20 T_{1,1,1}  T_{2,1,1}  T_{2,2,1}  T_{2,2,2}\n\
                    \x20 T_{1,1,0}  T_{2,1,0}  T_{2,2,0}  T_{2,2,1}\n\
                    \x20 T_{1,0,0}  T_{2,0,0}  T_{2,1,0}  T_{2,1,1}\n";
    assert!(out.contains(expected), "{out}");
    assert!(out.contains("matrix C (3x5):"), "{out}");
}

#[test]
fn construct_prints_the_h_polynomial() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.txt", LINEAR_FORMS);
    let o = reeskit(&["construct", s(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("h-polynomials (1):"), "{out}");
    assert!(out.contains("h = T_{2,1} - T_{1,0}"), "{out}");
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.txt", POWERS_3_12);
    for args in [vec!["construct"], vec!["verify", "--checks", "gb-minors,dimension"], vec!["export", "--dialect", "m2"]] {
        let mut a = args.clone();
        a.push(s(&f));
        let first = reeskit(&a);
        let second = reeskit(&a);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn invalid_field_is_a_located_parse_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", "mode = powers\nfield = F4\nn = 2\na = 1\n");
    let o = reeskit(&["construct", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column 9"), "{}", stderr(&o));
}

#[test]
fn field_flag_overrides_the_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "q.txt", "mode = powers\nn = 2\na = 1\n");
    let o = reeskit(&["construct", "--field", "Fp:7", s(&f)]);
    assert!(stdout(&o).contains("field: Fp:7"), "{}", stdout(&o));
    let o = reeskit(&["construct", "--field", "F4", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_passes_on_a_passing_plan() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.txt", POWERS_3_12);
    let report = dir.path().join("report.json");
    let o = reeskit(&["verify", "--checks", "dimension,initial-ideal,kernel-equality-M", "--report", s(&report), s(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("3/3 checks pass"));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(reports[0]["check"], "dimension");
    assert!(reports.iter().all(|r| r["verdict"] == "pass" && r["elapsedMs"].is_u64()));
    assert_eq!(doc["instance"]["n"], 3);
}

// Random column submatrices of B with repeated entries are not always Groebner,
// so with seed 0 the gb-minors check fails and the command exits 3.
#[test]
fn verify_gb_minors_reports_the_submatrix_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.txt", POWERS_3_12);
    let o = reeskit(&["verify", "--checks", "gb-minors,dimension", s(&f)]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("dimension [n=3, a=(1,2)]: pass"), "{}", stdout(&o));
    assert!(stdout(&o).contains("counterexample"));
    let o = reeskit(&["verify", "--checks", "gb-minors,dimension", "--submatrices", "0", s(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn unknown_check_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.txt", POWERS_3_12);
    let o = reeskit(&["verify", "--checks", "gb-minors,no-such-check", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown check `no-such-check`"), "{}", stderr(&o));
    let o = reeskit(&["verify", "--checks", "height-Q", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(reeskit(&["frobnicate"]).status.code() == Some(1));
    assert!(reeskit(&["--help"]).status.code() == Some(0));
}

#[test]
fn oversized_instance_is_aborted() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "big.txt", "mode = powers\nn = 4\na = 2, 3\n");
    let report = dir.path().join("r.json");
    let o = reeskit(&["verify", "--checks", "kernel-equality-M", "--pair-cap", "5", "--report", s(&report), s(&f)]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["reports"][0]["verdict"], "aborted");
    assert!(doc["reports"][0]["evidence"]["abortReason"].is_string());
}

#[test]
fn truncation_verify_defaults() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.txt", LINEAR_FORMS);
    let o = reeskit(&["verify", "--jobs", "2", s(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for name in ["rees-presentation", "divisorial-identity", "quadratic-gb (Koszul proxy)", "height-Q"] {
        assert!(out.contains(name), "{name}: {out}");
    }
}

#[test]
fn plain_export_round_trips_through_construct() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("p.txt", POWERS_3_12), ("t.txt", LINEAR_FORMS)] {
        let f = write(&dir, name, text);
        let o = reeskit(&["export", s(&f)]);
        assert_eq!(o.status.code(), Some(0));
        let back = write(&dir, &format!("back-{name}"), &stdout(&o));
        assert_eq!(stdout(&reeskit(&["construct", s(&back)])), stdout(&reeskit(&["construct", s(&f)])));
        assert_eq!(stdout(&reeskit(&["export", s(&back)])), stdout(&o));
    }
}

#[test]
fn m2_export_of_the_quadric() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "q.txt", "mode = powers\nn = 2\na = 1\n");
    let o = reeskit(&["export", "--dialect", "m2", s(&f)]);
    let out = stdout(&o);
    assert!(out.contains("S1 = QQ[T11, T10, x1, x2];"), "{out}");
    assert!(out.contains("I1 = ideal(T10*x1 - T11*x2);"), "{out}");
    assert!(out.contains("f1 = map(R1, S1, {x1*t1, x2*t1, x1, x2});"), "{out}");
    assert!(out.contains("assert(kernel f1 == I1);"), "{out}");
}

#[test]
fn singular_export_carries_the_same_ideal() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "q.txt", "mode = powers\nn = 2\na = 1\n");
    let m2 = stdout(&reeskit(&["export", "--dialect", "m2", s(&f)]));
    let sing = stdout(&reeskit(&["export", "--dialect", "singular", s(&f)]));
    let gens = |line: &str| line.to_string();
    let m2_ideal = m2.lines().find(|l| l.starts_with("I1 = ideal(")).map(gens).unwrap();
    let inner = m2_ideal.trim_start_matches("I1 = ideal(").trim_end_matches(");");
    assert!(sing.contains(&format!("ideal I1 = {inner};")), "{sing}");
    assert!(sing.contains("preimage(R1, f1, ideal(0))"));
    let o = reeskit(&["export", "--dialect", "maple", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
}
