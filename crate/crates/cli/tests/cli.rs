use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn adjx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adjx"))
        .args(args)
        .env_remove("ADJX_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn identity(n: usize) -> String {
    let mut s = format!("{n} {n}\n");
    for i in 0..n {
        let row: Vec<&str> = (0..n).map(|j| if i == j { "1" } else { "0" }).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[test]
fn division_free_adjoint_of_a_two_by_two() {
    let f = Files::new();
    let a = f.write("a2.txt", "2 2\n1 2\n3 4\n");
    let o = adjx(&["adjoint", "--in", a.to_str().unwrap(), "--ring", "int", "--mode", "division-free", "--no-timing"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "mode: \"division-free\"\nring: \"int\"\nn: 2\nseed: 1\ndet: \"-2\"\n\
         adjoint: [[\"4\",\"-2\"],[\"-3\",\"1\"]]\n\
         counters: {\"adds\":386,\"muls\":542,\"divs\":0,\"unit_divs\":8}\ntiming_ms: null\n"
    );
}

#[test]
fn identity_is_degenerate_in_field_mode() {
    let f = Files::new();
    let a = f.write("i5.txt", &identity(5));
    let o = adjx(&["det", "--in", a.to_str().unwrap(), "--ring", "zp:10007"]);
    assert_eq!(code(&o), 2);
    let o = adjx(&["det", "--in", a.to_str().unwrap(), "--ring", "int", "--mode", "division-free"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("det: \"1\"\n"));
}

#[test]
fn rational_inverse() {
    let f = Files::new();
    let a = f.write("h.txt", "2 2\n1 1\n1 2\n");
    let o = adjx(&["inverse", "--in", a.to_str().unwrap(), "--ring", "rational"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("inverse: [[\"2\",\"-1\"],[\"-1\",\"1\"]]\n"));
}

#[test]
fn fractional_entries_stay_exact() {
    let f = Files::new();
    let a = f.write("q.txt", "2 2\n1/2 1/3\n1/4 1/5\n");
    let o = adjx(&["inverse", "--in", a.to_str().unwrap(), "--ring", "rational", "--no-timing"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("det: \"1/60\"\n"), "{out}");
    assert!(out.contains("inverse: [[\"12\",\"-20\"],[\"-15\",\"30\"]]\n"), "{out}");
}

#[test]
fn integer_ring_in_field_mode() {
    let f = Files::new();
    let a = f.write("a3.txt", "3 3\n2 -1 0\n1 3 5\n-4 0 7\n");
    let o = adjx(&["adjoint", "--in", a.to_str().unwrap(), "--ring", "int"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("det: \"69\"\n"), "{out}");
    assert!(out.contains("adjoint: [[\"21\",\"7\",\"-5\"],[\"-27\",\"14\",\"-10\"],[\"12\",\"4\",\"7\"]]\n"), "{out}");
}

#[test]
fn exit_codes() {
    let f = Files::new();
    let singular = f.write("s.txt", "2 2\n1 2\n2 4\n");
    let half = f.write("half.txt", "1 1\n1/2\n");
    let bad = f.write("bad.txt", "2 2\n1 2\n3\n");
    let s = singular.to_str().unwrap();
    assert_eq!(code(&adjx(&["adjoint", "--in", s, "--ring", "rational"])), 4);
    assert_eq!(code(&adjx(&["inverse", "--in", s, "--ring", "zp:10007"])), 4);
    assert_eq!(code(&adjx(&["inverse", "--in", s, "--ring", "int", "--mode", "division-free"])), 4);
    assert_eq!(code(&adjx(&["det", "--in", s, "--ring", "rational"])), 0);
    assert_eq!(code(&adjx(&["det", "--in", half.to_str().unwrap(), "--ring", "int"])), 3);
    assert_eq!(code(&adjx(&["det", "--in", half.to_str().unwrap(), "--ring", "zp:2"])), 3);
    assert_eq!(code(&adjx(&["det", "--in", bad.to_str().unwrap()])), 3);
    assert_eq!(code(&adjx(&["det", "--in", "/nonexistent/matrix.txt"])), 3);
    assert_eq!(code(&adjx(&["det", "--in", s, "--ring", "zp:10005"])), 3);
    assert_eq!(code(&adjx(&["frobnicate"])), 3);
    assert_eq!(code(&adjx(&["check", "--against", "cofactor", "--n", "9"])), 3);
    assert_eq!(code(&adjx(&["check", "--against", "tape", "--n", "9", "--trials", "2"])), 0);
    assert_eq!(code(&adjx(&["bench", "--sizes"])), 3);
    assert_eq!(code(&adjx(&["bench", "--sizes", "4", "--mode", "division-free", "--ring", "zp:7"])), 3);
    assert_eq!(code(&adjx(&["--help"])), 0);
}

#[test]
fn same_seed_same_bytes() {
    let f = Files::new();
    let a = f.write("a.txt", "4 4\n3 1 4 1\n5 9 2 6\n5 3 5 8\n9 7 9 3\n");
    let p = a.to_str().unwrap();
    let args = ["adjoint", "--in", p, "--ring", "zp:10007", "--seed", "42", "--no-timing"];
    let first = adjx(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, adjx(&args).stdout);

    let threaded = adjx(&["adjoint", "--in", p, "--ring", "zp:10007", "--seed", "42", "--no-timing", "--threads", "3"]);
    assert_eq!(first.stdout, threaded.stdout);

    let from_env = Command::new(env!("CARGO_BIN_EXE_adjx"))
        .args(["adjoint", "--in", p, "--ring", "zp:10007", "--no-timing"])
        .env("ADJX_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(first.stdout, from_env.stdout);

    let bad_env = Command::new(env!("CARGO_BIN_EXE_adjx"))
        .args(["det", "--in", p])
        .env("ADJX_SEED", "forty-two")
        .output()
        .unwrap();
    assert_eq!(code(&bad_env), 3);
}

#[test]
fn strategies_agree() {
    let f = Files::new();
    let a = f.write("a.txt", "5 5\n2 7 1 8 2\n8 1 8 2 8\n4 5 9 0 4\n5 2 3 5 3\n6 0 2 8 7\n");
    let p = a.to_str().unwrap();
    let adj = |s: &str| {
        let o = adjx(&["adjoint", "--in", p, "--ring", "rational", "--strategy", s, "--no-timing"]);
        assert_eq!(code(&o), 0);
        stdout(&o).lines().find(|l| l.starts_with("adjoint:")).unwrap().to_string()
    };
    let sum = adj("sum");
    assert_eq!(sum, adj("squaring"));
    assert_eq!(sum, adj("auto"));
    let df = adjx(&["adjoint", "--in", p, "--ring", "int", "--mode", "division-free"]);
    assert!(stdout(&df).contains(&sum));
}

#[test]
fn check_passes_on_all_rings() {
    for ring in ["zp:10007", "int", "rational"] {
        let o = adjx(&["check", "--against", "all", "--n", "5", "--trials", "4", "--seed", "1", "--ring", ring]);
        assert_eq!(code(&o), 0, "{ring}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).ends_with("result: \"pass\"\n"));
    }
}

#[test]
fn full_oracle_battery() {
    let o = adjx(&["check", "--against", "all", "--n", "6", "--trials", "20", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("mismatches: 0\n"));
}

#[test]
fn zero_trials_pass_with_a_warning() {
    let o = adjx(&["check", "--trials", "0"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(stdout(&o).contains("compared: 0\n"));
}

#[test]
fn bench_csv() {
    let o = adjx(&["bench", "--sizes", "8,16"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,mode,adds,muls,divs,ms");
    assert!(lines[1].starts_with("8,field,"));
    assert!(lines[2].starts_with("16,field,"));
    let e: f64 = lines[3].rsplit(' ').next().unwrap().parse().unwrap();
    assert!((e - 3.0).abs() <= 0.3, "exponent {e}");

    let o = adjx(&["bench", "--sizes", "4,8", "--mode", "division-free"]);
    assert_eq!(code(&o), 0);
    for row in stdout(&o).lines().skip(1).take(2) {
        assert_eq!(row.split(',').nth(4), Some("0"), "{row}");
    }
}
