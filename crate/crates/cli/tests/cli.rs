//! End-to-end tests of the `blowup` binary: report content, exit codes,
//! determinism, and environment overrides.

use std::io::Write;
use std::process::{Command, Output};

const SQUARED: &str = "\
field qq
vars x y
row y, 0
row -x, y
row 0, -x
";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_blowup"))
}

fn write_input(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(text.as_bytes()).expect("write input");
    f
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn verify_classical_example_reports_consistent() {
    let f = write_input(SQUARED);
    let out = bin().arg("verify").arg(f.path()).output().unwrap();
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "stderr: {:?}", out.stderr);
    assert!(text.contains("case=expected-form"));
    assert!(text.contains("flag.expected_form=true"));
    assert!(text.contains("fiber.indeg=2"));
    assert!(text.contains("consistent=true"));
    assert!(!text.contains("timing."));
}

#[test]
fn verify_output_is_byte_identical_across_runs() {
    let f = write_input(SQUARED);
    let a = bin().arg("verify").arg(f.path()).output().unwrap();
    let b = bin().arg("verify").arg(f.path()).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timings_are_appended_only_on_request() {
    let f = write_input(SQUARED);
    let out = bin()
        .arg("verify")
        .arg(f.path())
        .arg("--timings")
        .output()
        .unwrap();
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("timing.verify="));
    assert!(text.lines().last().unwrap().starts_with("timing.total="));
}

#[test]
fn generate_then_verify_round_trips() {
    let gen = bin()
        .args(["gen", "--dim", "3", "--gens", "4", "--index", "1", "--seed", "5"])
        .output()
        .unwrap();
    assert_eq!(gen.status.code(), Some(0));
    let file_text = stdout_of(&gen);
    assert!(file_text.contains("field 32003"));
    assert!(file_text.contains("u 1"));

    let f = write_input(&file_text);
    let out = bin().arg("verify").arg(f.path()).output().unwrap();
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "report: {text}");
    assert!(text.contains("case=height-drop"));
    assert!(text.contains("instance.u=1"));
    assert!(text.contains("flag.expected_form=false"));
    assert!(text.contains("flag.fiber_type=true"));
    assert!(text.contains("consistent=true"));
}

#[test]
fn generation_is_deterministic_per_seed() {
    let run = || {
        stdout_of(
            &bin()
                .args(["gen", "--dim", "3", "--gens", "5", "--index", "2", "--seed", "9"])
                .output()
                .unwrap(),
        )
    };
    assert_eq!(run(), run());
}

#[test]
fn wrong_shape_is_rejected_with_exit_2() {
    let f = write_input("field 7\nvars x y\nrow x, y\nrow y, x\n");
    let out = bin().arg("verify").arg(f.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_of(&out).contains("case=rejected"));
}

#[test]
fn parse_problems_exit_2() {
    let bad_directive = write_input("field 7\nvars x y\nbogus 1\n");
    let out = bin().arg("verify").arg(bad_directive.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let nonlinear = write_input("field 7\nvars x y\nrow x*y, y\nrow x, y\nrow y, x\n");
    let out = bin().arg("verify").arg(nonlinear.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let missing = bin().arg("verify").arg("/nonexistent/path.txt").output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn size_caps_require_force() {
    let out = bin()
        .args(["gen", "--dim", "5", "--gens", "6", "--index", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
}

#[test]
fn budget_exhaustion_exits_3_and_flags_override_env() {
    let f = write_input(SQUARED);
    let out = bin()
        .arg("verify")
        .arg(f.path())
        .args(["--pair-cap", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = bin()
        .arg("verify")
        .arg(f.path())
        .env("BLOWUP_PAIR_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = bin()
        .arg("verify")
        .arg(f.path())
        .env("BLOWUP_PAIR_CAP", "1")
        .args(["--pair-cap", "50000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dual_command_prints_the_known_matrix() {
    let f = write_input(SQUARED);
    let out = bin().arg("dual").arg(f.path()).output().unwrap();
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("dual.row.1=-t2 | -t3"));
    assert!(text.contains("dual.row.2=t1 | t2"));
    assert!(text.contains("dual.rank=2"));
}

#[test]
fn gs_command_prints_the_ladder_table() {
    let f = write_input(SQUARED);
    let out = bin().arg("gs").arg(f.path()).output().unwrap();
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("heights=2,2"));
    assert!(text.contains("gs.s1=true"));
    assert!(text.contains("gs.s2=true"));
    assert!(text.contains("max_gs=2"));
}

#[test]
fn batch_summarizes_and_exits_0_on_success() {
    let out = bin()
        .args([
            "batch", "--dim", "3", "--gens", "4", "--index", "1", "--count", "2", "--seed", "42",
        ])
        .output()
        .unwrap();
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "output: {text}");
    assert!(text.contains("batch.0.case=height-drop"));
    assert!(text.contains("batch.1.consistent=true"));
    assert!(text.contains("batch.count=2"));
    assert!(text.contains("batch.passed=2"));
}

#[test]
fn declared_point_is_honored() {
    // The straightening point (1, 0, 0) is valid for a straightened
    // instance, so verification must succeed and echo it.
    let gen = bin()
        .args(["gen", "--dim", "3", "--gens", "4", "--index", "1", "--seed", "11"])
        .output()
        .unwrap();
    let mut file_text = stdout_of(&gen);
    file_text.push_str("point 1 0 0\n");
    let f = write_input(&file_text);
    let out = bin().arg("verify").arg(f.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "report: {}", stdout_of(&out));
}
