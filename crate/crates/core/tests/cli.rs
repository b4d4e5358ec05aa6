use std::path::PathBuf;
use std::process::{Command, Output};

fn quandles(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quandles"))
        .args(args)
        .output()
        .expect("run binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quandles-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const R4: &str = "1 3 1 3\n4 2 4 2\n3 1 3 1\n2 4 2 4\n";

#[test]
fn validate_accepts_a_quandle() {
    let p = scratch("r4.qmat", R4);
    let o = quandles(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid quandle of order 4"));
}

#[test]
fn validate_reports_a_witness() {
    let p = scratch("bad.qmat", "1 3 2\n2 2 1\n3 1 3\n");
    let o = quandles(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("Q3"), "{s}");
    assert!(s.contains("1 entries, 1 invalid"));
}

#[test]
fn validate_library_entries() {
    let p = scratch("mixed.qlib", "[ [ (2,3), (1,3), (1,2) ], [ (1,2), () ] ]");
    let o = quandles(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.starts_with("entry 1: valid"), "{s}");
    assert!(s.contains("entry 2: Q1"), "{s}");
}

#[test]
fn malformed_input_is_an_input_error() {
    let empty = scratch("empty.qmat", "");
    assert_eq!(
        quandles(&["validate", empty.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let junk = scratch("junk.qlib", "[ [ (1,2 ] ]");
    assert_eq!(
        quandles(&["validate", junk.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        quandles(&["validate", "/nonexistent/q.qmat"]).status.code(),
        Some(2)
    );
    assert_eq!(quandles(&["groups", "R:x"]).status.code(), Some(2));
    assert_eq!(
        quandles(&["groups", "R:5", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        quandles(&["groups", "R:5", "--selector", "out"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumerate_counts_and_writes_a_library() {
    let o = quandles(&["enumerate", "5", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "22\n");
    let lib = scratch("four.qlib", "");
    let o = quandles(&["enumerate", "4", "-o", lib.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = quandles(&["validate", lib.to_str().unwrap()]);
    assert!(stdout(&v).ends_with("7 entries, 0 invalid\n"));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = quandles(&["enumerate", "9", "--budget", "0.01"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn groups_tables() {
    let o = quandles(&["groups", "R:6", "--selector", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "quandle,dis,inn,aut\n1 3 5 1 3 5;6 2 4 6 2 4;5 1 3 5 1 3;4 6 2 4 6 2;3 5 1 3 5 1;2 4 6 2 4 6,Z_3,D_3,D_6\n"
    );
    let o = quandles(&["groups", "T:2", "--format", "md", "--selector", "aut"]);
    assert_eq!(
        stdout(&o),
        "| quandle | aut |\n|---|---|\n| 1 1;2 2 | Z_2 |\n"
    );
    let p = scratch("r4b.qmat", R4);
    let o = quandles(&["groups", p.to_str().unwrap(), "--jobs", "1"]);
    assert!(stdout(&o).ends_with(",Z_2\n"), "{}", stdout(&o));
}

#[test]
fn verify_passes_and_flags_a_corrupted_golden_file() {
    let o = quandles(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("CHECK golden builtin PASS"));
    let golden = quandles::autcalc::GOLDEN_DIS_CSV.replacen(",Z_3\n", ",Z_4\n", 1);
    let p = scratch("golden.csv", &golden);
    let o = quandles(&["verify", "5", "--golden", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("FAIL 1 mismatches"), "{s}");
    assert!(s.contains("expected Z_4 got Z_3"), "{s}");
}

#[test]
fn convert_round_trips() {
    let src = scratch("src.qmat", R4);
    let lib = src.with_file_name("mid.qlib");
    let back = src.with_file_name("back.qmat");
    assert_eq!(
        quandles(&["convert", src.to_str().unwrap(), lib.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        std::fs::read_to_string(&lib).unwrap().trim_end(),
        "[ [ (2,4), (1,3), (2,4), (1,3) ] ]"
    );
    quandles(&["convert", lib.to_str().unwrap(), back.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&back).unwrap(), R4);
    let bad = src.with_file_name("out.txt");
    assert_eq!(
        quandles(&["convert", src.to_str().unwrap(), bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
