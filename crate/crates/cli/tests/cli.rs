use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_riesz-lab"))
}

fn spec_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_spec(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("t.spec");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_reference_passes() {
    let o = run(&["check", "--cases", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.starts_with("# riesz-lab check report"));
    assert!(out.contains("spec n=3 weights=(1,1,2) blocks={1,2}{3}"));
    assert!(out.contains("failed=0"));
    assert!(!out.contains("\nFAIL "));
}

#[test]
fn each_suite_runs_alone() {
    for suite in ["lattice", "charges", "integration", "duality"] {
        let o = run(&["check", "--suite", suite, "--cases", "2"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains(&format!("suite {suite}")), "{suite}");
    }
}

#[test]
fn zero_cases_checks_only_the_spec_instance() {
    let o = run(&["check", "--cases", "0"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().filter(|l| l.starts_with("PASS")) {
        assert!(line.contains("instances=1"), "{line}");
    }
}

#[test]
fn same_seed_gives_identical_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for path in [&a, &b] {
        let o = run(&["check", "--seed", "7", "--cases", "5", "--report", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let ra = fs::read(&a).unwrap();
    assert!(!ra.is_empty());
    assert_eq!(ra, fs::read(&b).unwrap());
}

#[test]
fn elapsed_time_goes_to_stderr_only() {
    let o = run(&["check", "--suite", "lattice", "--cases", "1"]);
    assert!(stderr(&o).contains("elapsed"));
    assert!(!stdout(&o).contains("elapsed"));
}

#[test]
fn non_ac_charge_is_an_expected_failure() {
    let spec = spec_file("non_ac.spec");
    let o = run(&["check", "--suite", "integration", "--cases", "2", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    let line = out
        .lines()
        .find(|l| l.starts_with("EXPECTED-FAIL-demonstration"))
        .expect("demonstration line");
    assert!(line.contains("(0, 0, 1)") && line.contains("(0, 0, 0)"), "{line}");
    assert!(out.contains("expected-fail=1"));
}

#[test]
fn shipped_specs_all_pass() {
    for name in ["reference.spec", "non_ac.spec", "degenerate.spec"] {
        let spec = spec_file(name);
        let o = run(&["check", "--cases", "2", "--spec", spec.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn degenerate_spec_is_reduced() {
    let spec = spec_file("degenerate.spec");
    let o = run(&["check", "--suite", "lattice", "--cases", "0", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("note null ideal on points 2 removed"), "{out}");
    assert!(out.contains("spec n=3 weights=(1,1,3) blocks={1}{2,3}"), "{out}");
}

#[test]
fn zero_weight_without_flag_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_spec(&dir, "omega 2\nweights 1 0\nblock 1 2\n");
    let o = run(&["check", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_spec(&dir, "# comment\nomega 3\nweights 1 1 x\nblock 1 2 3\n");
    let o = run(&["check", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn overlapping_blocks_are_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_spec(&dir, "omega 3\nweights 1 1 2\nblock 1 2\nblock 2 3\n");
    let o = run(&["check", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("validation error") && err.contains("line 4"), "{err}");
}

#[test]
fn missing_spec_file_is_usage_error() {
    let o = run(&["check", "--spec", "/nonexistent/x.spec"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(run(&["check", "--max-omega", "11"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--max-omega", "1"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["demo", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["probe-conjecture", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["probe-conjecture", "--p", "1"]).status.code(), Some(2));
}

#[test]
fn demo_dual1_shows_block_norms() {
    let spec = spec_file("reference.spec");
    let o = run(&["demo", "dual1", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("block {1,2}: norm 4"));
    assert!(out.contains("block {3}: norm 5"));
    assert!(out.contains("assembled product norm = (4, 4, 5): holds"));
}

#[test]
fn demo_dualinf_recovers_t() {
    let o = run(&["demo", "dualinf"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("p = {1}: ∫p dμ = (1/2, 1/2, 0), T(p) = (1/2, 1/2, 0)"));
    assert!(out.contains("Φ(Ψ(T)) = T: holds"));
}

#[test]
fn every_demo_runs_without_failure() {
    for topic in ["dual1", "dual2", "dualinf", "lebesgue", "sombrero", "conjecture"] {
        let o = run(&["demo", topic, "--restarts", "8"]);
        assert_eq!(o.status.code(), Some(0), "{topic}");
        let out = stdout(&o);
        assert!(out.starts_with(&format!("== demo {topic} ==")), "{topic}");
        assert!(!out.contains("FAILS"), "{topic}: {out}");
    }
}

#[test]
fn probe_p2_cross_checks_exactly() {
    let o = run(&["probe-conjecture", "--p", "2", "--cases", "5", "--restarts", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("evidence only"));
    assert!(out.contains("exact L2 cross-check PASS"));
}

#[test]
fn probe_other_p_is_evidence() {
    let o = run(&["probe-conjecture", "--p", "3", "--cases", "3", "--restarts", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("summary instances=3"));
    assert!(!out.contains("cross-check"));
}
