use std::path::PathBuf;
use std::process::Command;

use dore_cli::cli::{run, EXIT_CAP, EXIT_CHECK_FAILED, EXIT_OK, EXIT_SPEC_ERROR};

fn manifest(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn fixture(name: &str) -> String {
    manifest(&format!("fixtures/{name}")).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn dore(args: &[&str], input: &str) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("dore").chain(args.iter().copied());
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

/// Compares with `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites the file instead.
fn golden(name: &str, actual: &str) {
    let path = manifest(&format!("tests/golden/{name}"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert!(expected == actual, "report differs from {}\n--- actual ---\n{actual}", path.display());
}

#[test]
fn h_lambda_certificate() {
    let r = dore(&["check-dcv", &fixture("h_lambda.spec"), "--format", "structured"], "");
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    golden("check_dcv_h_lambda.json", &r.stdout);
}

#[test]
fn subcase_411_presentation() {
    let r = dore(&["to-iterated", &fixture("subcase411.spec")], "");
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("order: y1-then-y2"));
    golden("to_iterated_subcase411.txt", &r.stdout);
}

#[test]
fn corrupted_h_counterexample() {
    let r = dore(&["check-extension", &fixture("corrupted_h.spec")], "");
    assert_eq!(r.code, EXIT_CHECK_FAILED);
    assert!(r.stdout.contains("counterexample"));
    golden("check_extension_corrupted_h.txt", &r.stdout);
}

#[test]
fn h_is_not_iterated() {
    let r = dore(&["to-iterated", &fixture("h_lambda.spec"), "--max-degree", "1"], "");
    assert_eq!(r.code, EXIT_CHECK_FAILED);
    assert!(r.stdout.contains("sigma12 != 0") && r.stdout.contains("sigma21 != 0"), "{}", r.stdout);
}

#[test]
fn graded_and_change_basis() {
    let r = dore(&["graded", &fixture("h_lambda.spec"), "--max-degree", "2"], "");
    assert_eq!(r.code, EXIT_OK, "{}", r.stdout);
    // P = (1, 1) has no associated graded algebra
    let r = dore(&["graded", &fixture("subcase411.spec"), "--max-degree", "2"], "");
    assert_eq!(r.code, EXIT_CHECK_FAILED);
    let r = dore(&["change-basis", &fixture("subcase411.spec"), "--max-degree", "2"], "");
    assert_eq!(r.code, EXIT_OK, "{}", r.stdout);
    assert!(r.stdout.contains("recovers_old_relation: pass"));
}

#[test]
fn change_basis_shift_recovers_relation() {
    let src = std::fs::read_to_string(fixture("subcase411.spec")).unwrap().replace("param p12 = 1\n", "param p12 = 3\n");
    let r = dore(&["change-basis", "-", "--max-degree", "2"], &src);
    assert!(r.stdout.contains("case: shift"), "{}", r.stdout);
    assert!(r.stdout.contains("recovers_old_relation: pass"));
}

#[test]
fn spec_from_stdin() {
    let src = std::fs::read_to_string(fixture("corrupted_h.spec")).unwrap();
    let r = dore(&["check-extension", "-", "--max-degree", "1"], &src);
    assert_eq!(r.code, EXIT_CHECK_FAILED);
}

#[test]
fn spec_errors_exit_2() {
    let r = dore(&["check-extension", "-"], "");
    assert_eq!(r.code, EXIT_SPEC_ERROR);
    assert!(r.stderr.contains("1:1") && r.stderr.contains("\"field\""), "{}", r.stderr);
    let r = dore(&["check-extension", "-"], "field Q\nring R gens x1 x2\nmap sigma11 x1 = x3\n");
    assert_eq!(r.code, EXIT_SPEC_ERROR);
    assert!(r.stderr.contains("x3"));
    let r = dore(&["check-extension", "/nonexistent/spec"], "");
    assert_eq!(r.code, EXIT_SPEC_ERROR);
    let r = dore(&["check-extension", "-"], "field F 4\nring R gens x\n");
    assert_eq!(r.code, EXIT_SPEC_ERROR);
    assert!(r.stderr.contains("not supported"));
    let r = dore(&["catalog", "verify", "--fixture", "no-such-fixture"], "");
    assert_eq!(r.code, EXIT_SPEC_ERROR);
}

#[test]
fn unknown_flags_exit_2() {
    for args in [
        vec!["check-dcv", "x.spec", "--bogus"],
        vec!["--scope", "everything", "check-dcv", "x.spec"],
        vec!["--format", "yaml", "catalog", "verify"],
        vec!["search-dcv", "x.spec"],
        vec!["frobnicate"],
    ] {
        assert_eq!(dore(&args, "").code, EXIT_SPEC_ERROR, "{args:?}");
    }
    assert_eq!(dore(&["--help"], "").code, EXIT_OK);
}

#[test]
fn search_caps_exit_3() {
    let r = dore(&["search-dcv", &fixture("h_lambda.spec"), "--degree", "3", "--pool", "0,1"], "");
    assert_eq!(r.code, EXIT_CAP);
    let pool: Vec<String> = (-40..40).map(|n| n.to_string()).collect();
    let r = dore(&["search-dcv", &fixture("h_lambda.spec"), "--degree", "2", "--pool", &pool.join(",")], "");
    assert_eq!(r.code, EXIT_CAP, "{}", r.stderr);
}

// x is central and y2 y1 = -y1 y2, so the only constraint on a candidate is q1 q2 + q2 q1 = 0.
const ANTI_F3: &str = "field F 3
ring R gens x
map sigma11 x = x
map sigma22 x = x
param p12 = 2
extension B = double(R, sigma, delta, P, tau)
";

/// Candidates pair up coefficients from {0, 1, x} on (1, y1, y2); the anticommutator vanishes
/// exactly when every cross product whose monomial cannot cancel is zero.
fn anticommuting_pairs() -> usize {
    let zero_or = |u: u8, v: u8| u == 0 || v == 0;
    let mut n = 0;
    for code in 0..3usize.pow(6) {
        let c: Vec<u8> = (0..6).map(|k| (code / 3usize.pow(k) % 3) as u8).collect();
        let (a, b) = (&c[..3], &c[3..]);
        let ok = (0..3).all(|i| (0..3).all(|j| (i > 0 && j > 0 && i != j) || zero_or(a[i], b[j])));
        n += ok as usize;
    }
    n
}

#[test]
fn search_over_prime_field() {
    let r = dore(&["search-dcv", "-", "--degree", "1", "--pool", "1", "--max-degree", "1"], ANTI_F3);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("candidates: 729"), "{}", r.stdout);
    assert!(r.stdout.contains(&format!("hits: {}\n", anticommuting_pairs())), "{}", r.stdout);
    let again = dore(&["search-dcv", "-", "--degree", "1", "--pool", "1", "--max-degree", "1", "--threads", "2"], ANTI_F3);
    assert_eq!(again.stdout, r.stdout);
    let r = dore(&["search-dcv", "-", "--degree", "1", "--pool", "1", "--unknown", "tau9"], ANTI_F3);
    assert_eq!(r.code, EXIT_SPEC_ERROR);
    let r = dore(&["search-dcv", "-", "--degree", "1"], &ANTI_F3.replace("F 3", "Q"));
    assert_eq!(r.code, EXIT_SPEC_ERROR);
}

#[test]
fn out_is_written_whole() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["check-dcv", &fixture("h_lambda.spec"), "--max-degree", "1", "--format", "structured"];
    let direct = dore(&args, "");
    let p = path.display().to_string();
    let r = dore(&[&args[..], &["--out", &p]].concat(), "");
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct.stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn catalog_verify_golden() {
    let r = dore(&["catalog", "verify", "--format", "structured"], "");
    assert_eq!(r.code, EXIT_OK, "{}", r.stdout);
    golden("catalog_verify.json", &r.stdout);
    let listed = dore(&["catalog", "list"], "");
    assert!(listed.stdout.contains("- subcase-4.1.1"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dore");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["check-extension", &fixture("corrupted_h.spec"), "--max-degree", "1"]), Some(EXIT_CHECK_FAILED));
    assert_eq!(status(&["check-dcv", &fixture("h_lambda.spec"), "--max-degree", "1"]), Some(EXIT_OK));
    assert_eq!(status(&["check-dcv", "--unknown-flag"]), Some(EXIT_SPEC_ERROR));
}
