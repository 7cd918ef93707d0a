//! End-to-end tests running the built binary.

use std::process::{Command, Output, Stdio};

fn arrfac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrfac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn arrfac_stdin(args: &[&str], stdin: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_arrfac"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn catalog_roundtrips_through_stdin() {
    let boolean = arrfac(&["catalog", "boolean-3", "--no-timing"]);
    assert!(boolean.status.success());
    let text = stdout(&boolean);
    assert!(text.starts_with("field r=1\ndim 3\n"));

    let info = arrfac_stdin(&["info", "-", "--no-timing"], &text);
    assert!(info.status.success());
    let report = stdout(&info);
    assert!(report.contains("hyperplanes: 3"));
    assert!(report.contains("flats-per-rank: 1 3 3 1"));

    // Printing is canonical: piping the catalog output through a restrict
    // at the ambient space reproduces it byte for byte.
    let echo = arrfac_stdin(&["restrict", "-", "--flat", "", "--no-timing"], &text);
    assert!(echo.status.success());
    assert_eq!(stdout(&echo), text);
}

#[test]
fn deterministic_output_with_no_timing() {
    let run = || stdout(&arrfac(&["reproduce", "table2-subset", "--no-timing"]));
    assert_eq!(run(), run());
}

#[test]
fn nice_check_exit_codes() {
    let arr = stdout(&arrfac(&["catalog", "e6-a1a2", "--no-timing"]));
    let good = arrfac_stdin(
        &[
            "nice-check",
            "-",
            "--partition",
            "0; 6 7 8 9; 1 2 3 4 5",
            "--no-timing",
        ],
        &arr,
    );
    assert_eq!(good.status.code(), Some(0));
    assert!(stdout(&good).contains("nice: true"));

    let bad = arrfac_stdin(
        &[
            "nice-check",
            "-",
            "--partition",
            "0 1; 2 3 4 5; 6 7 8 9",
            "--no-timing",
        ],
        &arr,
    );
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("nice: false"));
}

#[test]
fn malformed_input_is_an_operational_error() {
    let out = arrfac_stdin(&["info", "-", "--no-timing"], "field r=1\ndim 2\n1 0 0\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "stderr was: {err}");

    let out = arrfac(&["reproduce", "no-such-target", "--no-timing"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn duplicate_policy_flag() {
    let text = "field r=1\ndim 2\n1 0\n2 0\n";
    let warn = arrfac_stdin(&["info", "-", "--no-timing"], text);
    assert_eq!(warn.status.code(), Some(0));
    assert!(stdout(&warn).contains("hyperplanes: 1"));

    let strict = arrfac_stdin(&["info", "-", "--no-timing", "--duplicates", "error"], text);
    assert_eq!(strict.status.code(), Some(2));
}

#[test]
fn formats_are_machine_readable() {
    let csv = stdout(&arrfac(&[
        "reproduce",
        "table1",
        "--no-timing",
        "--format",
        "csv",
    ]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("check,expected,got,status"));
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",pass")));

    let jsonl = stdout(&arrfac(&[
        "reproduce",
        "table1",
        "--no-timing",
        "--format",
        "jsonl",
    ]));
    for line in jsonl.lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid json");
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn induction_table_via_certificate_file() {
    let dir = std::env::temp_dir().join("arrfac-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let arr_path = dir.join("a231.arr");
    let cert_path = dir.join("a231.cert");
    let arr = stdout(&arrfac(&["catalog", "intermediate-2-3-1", "--no-timing"]));
    std::fs::write(&arr_path, &arr).unwrap();

    let search = arrfac(&[
        "indfac-search",
        arr_path.to_str().unwrap(),
        "--cert-out",
        cert_path.to_str().unwrap(),
        "--no-timing",
    ]);
    assert_eq!(search.status.code(), Some(0));
    assert!(stdout(&search).contains("inductively-factored: true"));

    let table = arrfac(&[
        "induction-table",
        arr_path.to_str().unwrap(),
        "--cert",
        cert_path.to_str().unwrap(),
        "--no-timing",
    ]);
    assert_eq!(table.status.code(), Some(0));
    let text = stdout(&table);
    assert!(text.contains("exp_before"));
    assert_eq!(text.lines().filter(|l| l.contains("part")).count(), 1);
    assert!(text.contains("final-exponents: {1,3,3}"));

    // A corrupted certificate is rejected with exit code 1.
    let cert = std::fs::read_to_string(&cert_path).unwrap();
    let corrupted: String = cert
        .lines()
        .map(|l| {
            if let Some(rest) = l.strip_suffix("part 2") {
                format!("{rest}part 1\n")
            } else {
                format!("{l}\n")
            }
        })
        .collect();
    std::fs::write(&cert_path, corrupted).unwrap();
    let table = arrfac(&[
        "induction-table",
        arr_path.to_str().unwrap(),
        "--cert",
        cert_path.to_str().unwrap(),
        "--no-timing",
    ]);
    assert_eq!(table.status.code(), Some(1));
}

#[test]
fn supersolvable_and_localize() {
    let b3 = stdout(&arrfac(&["catalog", "intermediate-2-3-3", "--no-timing"]));
    let out = arrfac_stdin(&["supersolvable", "-", "--no-timing"], &b3);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("supersolvable: true"));
    assert!(text.contains("chain-partition:"));

    let loc = arrfac_stdin(&["localize", "-", "--flat", "0 1", "--no-timing"], &b3);
    assert!(loc.status.success());
    assert!(stdout(&loc).starts_with("field r=2\ndim 3\n"));
}
