//! End-to-end runs of the command-line binary: exit codes, emitted
//! documents re-ingested through check, determinism of rendered reports,
//! and budget handling through flags and the environment.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qf"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn compute_emits_a_document_that_checks_clean() {
    let out_path = scratch("tensor.json");
    let out = run(&[
        "compute",
        "tensor",
        "C3",
        "M2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(
        stdout(&out).contains("9"),
        "cardinality appears in the report"
    );

    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("\"lattices\""));
    let check = run(&["check", out_path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0), "stderr: {}", stderr(&check));
    assert!(stdout(&check).contains("validates"));
}

#[test]
fn compute_without_out_prints_the_document_on_stdout() {
    let out = run(&["compute", "matq", "2", "2"]);
    assert!(out.status.success());
    let doc = stdout(&out);
    assert!(doc.trim_start().starts_with('{'));
    assert!(doc.contains("\"quantales\""));
    assert!(stderr(&out).contains("Mat2(2)"), "report goes to stderr");

    let path = scratch("matq.json");
    std::fs::write(&path, &doc).unwrap();
    let check = run(&["check", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn every_compute_kind_round_trips_through_check() {
    let cases: &[&[&str]] = &[
        &["compute", "tensor", "2", "N5"],
        &["compute", "hom", "C3", "C4"],
        &["compute", "matq", "2", "2"],
        &["compute", "eae", "Rel2", "1"],
        &["compute", "free", "C3-locale", "2"],
        &["compute", "relq", "2"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let path = scratch(&format!("kind-{i}.json"));
        let mut args = case.to_vec();
        args.extend(["--out", path.to_str().unwrap()]);
        let out = run(&args);
        assert!(out.status.success(), "{case:?} stderr: {}", stderr(&out));
        let check = run(&["check", path.to_str().unwrap()]);
        assert_eq!(check.status.code(), Some(0), "{case:?}");
    }
}

#[test]
fn budget_failures_exit_three() {
    let over = run(&["compute", "matq", "C5", "4"]);
    assert_eq!(over.status.code(), Some(3));
    assert!(stderr(&over).contains("budget exceeded"));

    let flagged = run(&["--budget", "10", "compute", "tensor", "N5", "N5"]);
    assert_eq!(flagged.status.code(), Some(3));

    let env = bin()
        .env("QF_BUDGET", "10")
        .args(["compute", "tensor", "N5", "N5"])
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));

    // An explicit flag wins over the environment.
    let flag_wins = bin()
        .env("QF_BUDGET", "10")
        .args(["--budget", "20000", "compute", "tensor", "N5", "N5"])
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));

    let broken = bin()
        .env("QF_BUDGET", "many")
        .args(["compute", "tensor", "2", "2"])
        .output()
        .unwrap();
    assert_eq!(broken.status.code(), Some(2));
}

#[test]
fn usage_and_parse_problems_exit_two() {
    assert_eq!(run(&["suite", "nonexistent"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "tensor", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["compute", "tensor", "2", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["morita", "verify-witness", "2", "2", "E13"])
            .status
            .code(),
        Some(2),
        "matrix unit index out of range"
    );
    assert_eq!(
        run(&["morita", "verify-witness", "2", "2", "E1"])
            .status
            .code(),
        Some(2)
    );

    let path = scratch("broken.json");
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(
        run(&["check", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["check", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn invalid_structures_exit_one() {
    let path = scratch("bad.json");
    std::fs::write(
        &path,
        r#"{"lattices":[{"name":"bad","elements":["a","b"],"leq":[[1,0],[0,1]]}]}"#,
    )
    .unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    assert!(stdout(&out).contains("no bottom element"));
}

#[test]
fn defs_files_extend_the_catalog() {
    let path = scratch("defs.json");
    std::fs::write(
        &path,
        r#"{"lattices":[{"name":"V","elements":["0","a","1"],"leq":[[1,1,1],[0,1,1],[0,0,1]]}]}"#,
    )
    .unwrap();
    let out = run(&[
        "--defs",
        path.to_str().unwrap(),
        "compute",
        "tensor",
        "V",
        "V",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(
        stderr(&out).contains("6"),
        "a three-chain tensor square has six elements"
    );
}

#[test]
fn witness_verification_passes_on_the_standard_unit() {
    let out = run(&[
        "morita",
        "verify-witness",
        "2",
        "2",
        "E11",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"status\": \"pass\""));
    assert!(!text.contains("\"status\": \"fail\""));

    let listed = run(&["morita", "find-full-idempotents", "2", "2"]);
    assert_eq!(listed.status.code(), Some(0));
    let text = stdout(&listed);
    assert!(text.contains("[[1,0],[0,0]]"), "the corner unit is listed");
    assert!(text.contains("[[1,0],[0,1]]"), "the identity is listed");

    let census = run(&["morita", "census", "2", "4"]);
    assert_eq!(census.status.code(), Some(0));
    assert!(stdout(&census).contains("4 entries at carriers up to 4"));

    let comm = run(&["morita", "commutative-check", "2", "C3-locale"]);
    assert_eq!(comm.status.code(), Some(0));
    assert!(stdout(&comm).contains("not Morita equivalent"));
}

#[test]
fn suites_run_and_aliases_resolve() {
    for name in ["biproducts", "modules-over-two", "prop-6-4", "mod2-sl"] {
        let out = run(&["suite", name]);
        assert_eq!(out.status.code(), Some(0), "suite {name}: {}", stderr(&out));
        assert!(stdout(&out).contains("result: pass"));
    }
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let args = ["suite", "corner-evaluation", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let compute_args = ["compute", "hom", "N5", "M2"];
    let a = run(&compute_args);
    let b = run(&compute_args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_write_to_files_and_render_text() {
    let path = scratch("report.json");
    let out = run(&[
        "suite",
        "biproducts",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"command\": \"suite biproducts\""));

    let text_out = run(&["suite", "biproducts", "--format", "text"]);
    assert!(stdout(&text_out).contains("result: pass"));

    let threaded = run(&["--threads", "2", "suite", "biproducts"]);
    assert_eq!(threaded.status.code(), Some(0));
}
