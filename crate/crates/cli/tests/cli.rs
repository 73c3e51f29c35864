use std::process::{Command, Output};

fn fatpoints(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fatpoints"))
        .args(args)
        .env_remove("FATPOINTS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn certify_square_defaults() {
    let out = fatpoints(&["certify", "--n", "16", "--m", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("best_t=8"), "{text}");
    assert!(text.contains("aprop=9"), "{text}");
    assert!(text.contains("alpha=9"), "{text}");
}

#[test]
fn certify_non_square_needs_curve() {
    let out = fatpoints(&["certify", "--n", "15", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("theorem not applicable"), "{err}");
    assert!(err.contains("--d/--r"), "{err}");

    let out = fatpoints(&["certify", "--n", "15", "--m", "2", "--d", "3", "--r", "12"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("theorem: not applicable"));
}

#[test]
fn certify_json_is_one_line() {
    let out = fatpoints(&["certify", "--n", "25", "--m", "1", "--json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["best_t"], 5);
    assert_eq!(v["theorem"]["predicted_alpha"], 6);
}

#[test]
fn unvalidated_regime_is_labelled() {
    // r^2 > d^2 n: the closed-form bound does not apply.
    let out = fatpoints(&["certify", "--n", "10", "--m", "2", "--d", "1", "--r", "10"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("unvalidated parameter regime"));
}

#[test]
fn verify_reports_match() {
    let out = fatpoints(&["verify", "--n", "16", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("match; alpha=9, h=(0,7,18), gens=(7,0)"));
}

#[test]
fn verify_rejects_small_n() {
    let out = fatpoints(&["verify", "--n", "9", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(fatpoints(&["certify", "--n", "16"]).status.code(), Some(2));
    assert_eq!(fatpoints(&["grid", "--s", "x..5"]).status.code(), Some(2));
    assert_eq!(fatpoints(&["grid", "--s", "3..5"]).status.code(), Some(2));
    assert_eq!(
        fatpoints(&["oracle", "--n", "16", "--m", "2", "--prime", "65520"]).status.code(),
        Some(2)
    );
}

#[test]
fn trace_shows_conditions() {
    let out = fatpoints(&["trace", "--n", "16", "--m", "2", "--t", "8", "--d", "3", "--r", "12"]);
    let text = stdout(&out);
    assert!(text.contains("(5; 2x4, 1x12)"), "{text}");
    assert!(text.contains("omega=3 omega'=3 mu=8"), "{text}");
    assert!(text.contains("12 <= 16 holds"), "{text}");

    let out = fatpoints(&["trace", "--n", "16", "--m", "2", "--t", "9", "--d", "3", "--r", "12"]);
    let text = stdout(&out);
    assert!(text.contains("fails at i=0"), "{text}");
    assert!(text.contains("not certified"), "{text}");
}

#[test]
fn oracle_and_conjecture_agree() {
    let out = fatpoints(&["oracle", "--n", "16", "--m", "2", "--t", "9"]);
    assert!(stdout(&out).contains("h=7"));
    let out = fatpoints(&["conjecture", "--n", "16", "--m", "2", "--t", "9"]);
    assert!(stdout(&out).contains("h(9)=7"));
}

#[test]
fn grid_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_fatpoints"))
        .args(["grid", "--s", "4", "--m-max", "3", "--out"])
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(
        text,
        "n,m,status,predicted_alpha,oracle_alpha\n\
         16,1,theorem_certified,5,\n\
         16,2,theorem_certified,9,\n\
         16,3,out_of_range,13,\n"
    );
    let svg = std::fs::read_to_string(dir.path().join("grid.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn grid_unwritable_path_exits_two() {
    let out = fatpoints(&["grid", "--s", "4", "--m-max", "2", "--out", "/nonexistent/dir/g.csv"]);
    assert_eq!(out.status.code(), Some(2));
}
