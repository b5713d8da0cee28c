use std::path::Path;
use std::process::{Command, Output};

use regclose_cli::{Report, Verdict};
use tempfile::TempDir;

fn regclose(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regclose"))
        .args(args)
        .current_dir(dir)
        .env_remove("REGCLOSE_MAX_POINTS")
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    std::fs::write(dir.path().join(name), text).unwrap();
    name.to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const MIXED: &str = r#"{
  "name": "mixed",
  "universe": {"max_points": 4},
  "checks": [
    {"kind": "compare", "args": {"a": "t0", "b": "seh:sierpinski"}},
    {"kind": "compare", "args": {"a": "t0", "b": "all"}},
    {"kind": "thm41", "args": {"a": "t0", "b": "indiscrete", "max_points": 3}},
    {"kind": "hull", "args": {"which": "d", "subcat": "t0", "space": "sierpinski", "bound": 3}},
    {"kind": "diagonal", "args": {"space": "doublet.json", "subcat": "t0"}},
    {"kind": "closure", "args": {"space": "doublet.json", "subset": ["a"], "subcat": "t0", "method": "both"}}
  ]
}"#;

const DOUBLET: &str = r#"{"points": ["a", "b"], "opens": [[], ["a", "b"]]}"#;

#[test]
fn scenario_verdicts_and_exit_code() {
    let dir = TempDir::new().unwrap();
    write(&dir, "doublet.json", DOUBLET);
    let file = write(&dir, "mixed.json", MIXED);
    let out = regclose(&["scenario", &file, "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let report = Report::from_json(&stdout(&out)).unwrap();
    let verdicts: Vec<Verdict> = report.results.iter().map(|r| r.verdict).collect();
    use Verdict::*;
    assert_eq!(verdicts, [Pass, Fail, Pass, BoundedPass, Fail, Pass]);
    assert_eq!(report.results[3].bound, Some(3));
    let cx = &report.results[1].witnesses[0];
    assert_eq!(cx["space"]["points"], serde_json::json!(["0", "1"]));
    assert_eq!(cx["subset"].as_array().unwrap().len(), 1);
    assert_eq!(cx["closure_a"].as_array().unwrap().len(), 2);
    assert_eq!(report.summary.fail, 2);
    assert!(report.results.iter().all(|r| r.verdict != Fail || !r.witnesses.is_empty()));
    assert!(report.results.iter().all(|r| r.verdict != BoundedPass || r.bound.is_some()));
}

#[test]
fn passing_scenario_exits_zero() {
    let dir = TempDir::new().unwrap();
    let file = write(
        &dir,
        "ok.json",
        r#"{"name": "ok", "checks": [{"kind": "compare", "args": {"a": "t0", "b": "seh:sierpinski"}}]}"#,
    );
    let out = regclose(&["scenario", &file], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[1] compare: pass"));
}

#[test]
fn empty_scenario() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "empty.json", r#"{"name": "empty", "checks": []}"#);
    let out = regclose(&["scenario", &file], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("summary: 0 checks, 0 pass, 0 bounded-pass, 0 fail\n"));
}

#[test]
fn json_reports_are_byte_identical_and_round_trip() {
    let dir = TempDir::new().unwrap();
    write(&dir, "doublet.json", DOUBLET);
    let file = write(&dir, "mixed.json", MIXED);
    let first = stdout(&regclose(&["scenario", &file, "--format", "json"], dir.path()));
    let second = stdout(&regclose(&["scenario", &file, "--format", "json"], dir.path()));
    assert_eq!(first, second);
    let report = Report::from_json(&first).unwrap();
    assert_eq!(report.to_json(), first);
    assert!(!first.contains("duration_ms"));
    let timed = stdout(&regclose(&["scenario", &file, "--format", "json", "--timings"], dir.path()));
    assert!(timed.contains("duration_ms"));
}

#[test]
fn thm41_text_has_truth_table() {
    let dir = TempDir::new().unwrap();
    let file = write(
        &dir,
        "t.json",
        r#"{"name": "t", "universe": {"max_points": 2},
            "checks": [{"kind": "thm41", "args": {"a": "t0", "b": "all"}}]}"#,
    );
    let text = stdout(&regclose(&["scenario", &file], dir.path()));
    assert!(text.lines().any(|l| l.trim_start().starts_with("space") && l.ends_with("P a b")), "{text}");
    assert!(text.lines().any(|l| l.trim_start().starts_with("fs2:3.3") && l.ends_with("T F F")), "{text}");
    assert!(text.contains("P=T a=F b=F c=F"), "{text}");
}

#[test]
fn input_errors_exit_two_and_name_the_field() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"name": "x", "universe": {"max_points": 99}}"#, "universe.max_points"),
        (r#"{"name": "x", "checks": [{"kind": "compare", "args": {"a": "t7", "b": "all"}}]}"#, "checks[0].args.a"),
        (r#"{"name": "x", "checks": [{"kind": "closure", "args": {}}]}"#, "checks[0].args.space"),
        (r#"{"name": "x", "checks": [{"kind": "lemma", "args": {}}]}"#, "checks[0].kind"),
        (r#"{"name": "x", "checks": [{"kind": "hull", "args": {"which": "s", "subcat": "t0", "space": "missing.json"}}]}"#, "checks[0].args.space"),
        ("not json", "scenario"),
    ];
    for (i, (text, field)) in cases.iter().enumerate() {
        let file = write(&dir, &format!("bad{i}.json"), text);
        let out = regclose(&["scenario", &file], dir.path());
        assert_eq!(out.status.code(), Some(2), "{text}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(field), "{err}");
        assert!(out.stdout.is_empty());
    }
    let out = regclose(&["scenario", "nowhere.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ceiling_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "big.json", r#"{"name": "big", "universe": {"max_points": 5}}"#);
    assert_eq!(regclose(&["scenario", &file], dir.path()).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_regclose"))
        .args(["scenario", &file])
        .current_dir(dir.path())
        .env("REGCLOSE_MAX_POINTS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn subcommands() {
    let dir = TempDir::new().unwrap();
    let space = write(&dir, "s.json", r#"{"points": ["x", "y"], "opens": [[], ["y"], ["x", "y"]]}"#);
    let out = regclose(&["validate", &space], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("canonical form fs2:1.3"));
    let bad = write(&dir, "bad.json", r#"{"points": ["x", "y"], "opens": [["x"], ["x", "y"]]}"#);
    assert_eq!(regclose(&["validate", &bad], dir.path()).status.code(), Some(2));

    let out = regclose(&["spaces", "--n", "4", "--format", "json"], dir.path());
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.results[0].details.as_array().unwrap().len(), 33);

    let out = regclose(&["closure", "--space", &space, "--subset", "y", "--subcat", "t1"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("c({y}) = {x,y}"), "{}", stdout(&out));

    let out = regclose(&["compare", "--a", "indiscrete", "--b", "all", "--max-points", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = regclose(&["compare", "--a", "t0", "--b", "all"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    let out = regclose(&["hull", "--which", "mono", "--subcat", "t0", "--space", "i2", "--bound", "3"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("bound: 3"));

    let out = regclose(&["diagonal", "--space", &space, "--subcat", "t0"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = regclose(&["axioms", "--subcat", "discrete", "--max-points", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = regclose(&["axioms", "--subcat", "discrete", "--max-points", "5"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(regclose(&["frobnicate"], dir.path()).status.code(), Some(2));
}
