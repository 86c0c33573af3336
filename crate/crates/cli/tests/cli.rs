use std::fs;
use std::io::Cursor;

use selfdual::format::parse_stgc;
use selfdual::stgc::verify_stgc;
use selfdual_cli::{run, status};

fn sds(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sds").chain(args.iter().copied());
    let code = run(argv, &mut Cursor::new(stdin.as_bytes().to_vec()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn ccr_three() {
    let (code, out, _) = sds(&["ccr", "--n", "3"], "");
    assert_eq!(code, status::OK);
    assert_eq!(out, "01\n000111\n");
}

#[test]
fn mccr_has_header() {
    let (code, out, _) = sds(&["mccr", "--m", "3", "--n", "2"], "");
    assert_eq!(code, status::OK);
    assert_eq!(out, "# m=3\n021\n001122\n");
}

#[test]
fn counts_reports() {
    let (code, out, _) = sds(&["counts", "--n", "12"], "");
    assert_eq!(code, status::OK);
    assert!(out.contains("total=172 periods={8:2,24:170} source=brute"));
    let (code, out, _) = sds(&["counts", "--i", "1", "--p", "5"], "");
    assert_eq!(code, status::OK);
    assert!(out.starts_with("m=2 n=10 total=52 periods={4:1,20:51} source=formula\n"));
    let (code, out, _) = sds(&["counts", "--m", "3", "--n", "30"], "");
    assert_eq!(code, status::OK, "{out}");
    assert!(out.contains("brute: skipped"));
    let (code, out, _) = sds(&["counts", "--identity", "--m", "3", "--n", "4"], "");
    assert_eq!(code, status::OK);
    assert!(out.contains("plain set: sum=8"));
}

#[test]
fn transforms_read_stdin() {
    let (code, out, _) = sds(&["delta", "--block", "3"], "000000111111\n");
    assert_eq!(code, status::OK);
    assert_eq!(out, "000111000111\n");
    let (code, out, _) = sds(&["dinv"], "01\n");
    assert_eq!(code, status::OK);
    assert_eq!(out, "# D^-1 of 01: sds_doubled\n0011\n");
    let (code, out, _) = sds(&["dinv", "--block", "3"], "01\n");
    assert_eq!(code, status::OK);
    assert_eq!(out, "# block 3 inverse of 01\n000010111101\n0110\n");
    let (code, out, _) = sds(&["recurse", "--n", "3"], "");
    assert_eq!(code, status::OK);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn build_and_verify_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for (args, period) in [
        (vec!["build-diff", "--m", "3"], 27),
        (vec!["build-thm", "--n", "5"], 30),
        (vec!["build-thm", "--n", "3", "--m", "3"], 27),
        (vec!["search-thm3", "--p", "5"], 30),
    ] {
        let path = dir.path().join("c.stgc");
        let p = path.to_str().unwrap();
        let mut full = args.clone();
        full.extend(["--out", p]);
        let (code, out, err) = sds(&full, "");
        assert_eq!(code, status::OK, "{args:?}: {err}");
        assert!(out.contains(&format!("result: PASS P={period}")), "{out}");
        let text = fs::read_to_string(&path).unwrap();
        assert!(verify_stgc(&parse_stgc(&text).unwrap()).passed());
        let (code, out, _) = sds(&["verify", p], "");
        assert_eq!(code, status::OK);
        assert!(out.starts_with("max period: yes\n"), "{args:?}: {out}");
    }
}

#[test]
fn code_on_stdout_report_on_stderr() {
    let (code, out, err) = sds(&["build-diff", "--m", "3"], "");
    assert_eq!(code, status::OK);
    assert!(out.starts_with("STGC m=3 n=3 P=27\n"));
    assert!(err.contains("result: PASS"));
    let (code, report, _) = sds(&["verify"], &out);
    assert_eq!(code, status::OK);
    assert!(report.contains("all words: yes"));
}

#[test]
fn build_thm_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("order.txt");
    fs::write(&path, "# m=3\n000111222\n010121202\n110221002\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, err) = sds(&["build-thm", "--n", "3", "--m", "3", "--in", p], "");
    assert_eq!(code, status::OK, "{err}");
    assert!(err.contains("ell=4"));
    assert_eq!(out.lines().count(), 28);
    let (code, _, err) = sds(&["build-thm", "--n", "3", "--m", "3", "--ell", "2", "--in", p], "");
    assert_eq!(code, status::INPUT);
    assert!(err.contains("E^2"));
}

#[test]
fn deterministic_output() {
    for args in [&["build-rec", "--p", "3", "--t", "2"][..], &["build-diff", "--m", "5"], &["examples", "--id", "1"]] {
        assert_eq!(sds(args, ""), sds(args, ""), "{args:?}");
    }
}

#[test]
fn failure_statuses() {
    assert_eq!(sds(&["frobnicate"], "").0, status::USAGE);
    assert_eq!(sds(&["ccr"], "").0, status::USAGE);
    assert_eq!(sds(&["counts"], "").0, status::USAGE);
    assert_eq!(sds(&["examples", "--id", "2"], "").0, status::USAGE);
    assert_eq!(sds(&["verify", "/nonexistent/code.stgc"], "").0, status::IO);
    assert_eq!(sds(&["ccr", "--n", "40"], "").0, status::GUARD);
    assert_eq!(sds(&["build-rec", "--p", "5", "--t", "2"], "").0, status::GUARD);
    assert_eq!(sds(&["build-diff", "--m", "7"], "").0, status::INPUT);
    assert_eq!(sds(&["delta", "--block", "2"], "0x1\n").0, status::INPUT);
    assert_eq!(sds(&["verify"], "STGC m=2 n=2 P=3\n00\n01\n").0, status::INPUT);
    let broken = "STGC m=2 n=2 P=4\n00\n01\n11\n01\n";
    let (code, out, _) = sds(&["verify"], broken);
    assert_eq!(code, status::FAILED);
    assert!(out.contains("result: FAIL"));
    let (code, out, _) = sds(&["--help"], "");
    assert_eq!(code, status::OK);
    assert!(out.contains("search-thm3"));
}
