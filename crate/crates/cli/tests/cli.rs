use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn mft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mft")).args(args).output().expect("binary runs")
}

fn mft_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mft"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn core_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core")
}

fn figure(name: &str) -> String {
    core_dir().join("figures").join(format!("{name}.json")).to_string_lossy().into_owned()
}

const L1: &str = r#"{"type":"polygon","vertices":[["1","0"],["0","1"],["-1","0"],["0","-1"]]}"#;

fn problem(norm: &str, points: &str) -> String {
    format!(r#"{{"norm": {norm}, "points": {points}}}"#)
}

#[test]
fn fig1_locus_is_the_parallelogram() {
    let out = mft(&["ft-locus", &figure("fig1")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["locus"]["kind"], "polygon");
    let mut vs: Vec<String> = v["locus"]["vertices"].as_array().unwrap().iter().map(|p| p.to_string()).collect();
    vs.sort();
    let expected = [r#"["-1/2","-1/2"]"#, r#"["-1/2","1/2"]"#, r#"["1/2","-1/2"]"#, r#"["1/2","1/2"]"#];
    assert_eq!(vs, expected);
    assert_eq!(v["value"], "4");
}

#[test]
fn euclidean_angle() {
    // 0.866 misses √3/2 by about 4e-5, which the default 1e-9 tolerance rejects.
    let loose = json(&mft(&["angle", "--norm", "euclid", "--arms", "1,0", "-0.5,0.866", "--tol", "1e-4"]));
    assert_eq!(loose["critical"], true);
    let tight = json(&mft(&["angle", "--norm", "euclid", "--arms", "1,0", "-0.5,0.866"]));
    assert_eq!(tight["critical"], false);
    let exact = json(&mft(&["angle", "--norm", "euclid", "--arms", "1,0", "-0.5,0.8660254037844386"]));
    assert_eq!(exact["critical"], true);
    assert_eq!(exact["absorbing"], true);
}

#[test]
fn polygon_angle_from_file() {
    let input = problem(L1, r#"[["0","0"],["1","0"],["0","1"]]"#);
    let v = json(&mft_stdin(&["angle"], &input));
    assert_eq!(v["critical"], true);
    assert_eq!(v["sum_norm_range"], serde_json::json!(["0", "2"]));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(mft(&["ft-point", "missing.json"]).status.code(), Some(2));
    assert_eq!(mft_stdin(&["ft-point"], "not json").status.code(), Some(2));
    let floats = format!(r#"{{"norm": {L1}, "points": [[0.5, 1]]}}"#);
    assert_eq!(mft_stdin(&["ft-point"], &floats).status.code(), Some(2));
    let dup = problem(L1, r#"[["1","0"],["1","0"]]"#);
    assert_eq!(mft_stdin(&["ft-locus"], &dup).status.code(), Some(2));
    let three = problem(L1, r#"[["1","0"],["2","0"],["0","3"]]"#);
    assert_eq!(mft_stdin(&["d-segment"], &three).status.code(), Some(2));
    let asym = problem(r#"{"type":"polygon","vertices":[["2","0"],["0","1"],["-1","0"],["0","-1"]]}"#, "[]");
    assert_eq!(mft_stdin(&["ft-point"], &asym).status.code(), Some(2));
    assert_eq!(mft(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(mft(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_reports_non_optimal_points() {
    let input = problem(L1, r#"[["0","0"],["3","1"],["1","5"]]"#);
    let ok = mft_stdin(&["verify", "--point", "1,1"], &input);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["certificate"]["mode"], "Floating");
    let bad = mft_stdin(&["verify", "--point", "2,2"], &input);
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    assert_eq!(v["reason"], "not-optimal");
    assert_eq!(v["detail"]["objective"], "10");
}

#[test]
fn d_segment_and_norm_override() {
    let input = problem(L1, r#"[["0","0"],["3","1"]]"#);
    let v = json(&mft_stdin(&["d-segment"], &input));
    assert_eq!(v["d_segment"]["kind"], "polygon");
    let hex = json(&mft_stdin(&["d-segment", "--norm", "hexagon"], &input));
    assert_eq!(hex["d_segment"]["kind"], "polygon");
    let lp = json(&mft_stdin(&["ft-point", "--norm", "euclid"], &problem(L1, r#"[["0","0"],["2","0"]]"#)));
    assert_eq!(lp["exact"], false);
}

#[test]
fn classify_double_cluster() {
    let v = json(&mft(&["classify", &figure("fig5")]));
    assert_eq!(v["hull_relation"], "LocusEscapesHull");
    assert_eq!(v["double_cluster"]["concurrent"], true);
    assert_eq!(v["shape"], "Parallelogram");
}

#[test]
fn render_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["fig1", "fig3"] {
        let path = dir.path().join(format!("{name}.svg"));
        let out = mft(&["render", name, "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let golden = std::fs::read(core_dir().join("tests/golden").join(format!("{name}.svg"))).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), golden, "{name}");
    }
}

#[test]
fn render_without_points_draws_the_ball() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("empty.json");
    std::fs::write(&file, problem(L1, "[]")).unwrap();
    let svg = dir.path().join("empty.svg");
    let out = mft(&["render", file.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(svg).unwrap();
    assert_eq!(text.matches("<polygon").count(), 1);
    assert!(!text.contains("<circle"));
}

#[test]
fn suite_records_are_line_delimited() {
    let out = mft(&["suite", "dcollinear", "--trials", "4", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    for (i, r) in lines.iter().enumerate() {
        assert_eq!(r["seed"], 9 + i as u64);
        assert_eq!(r["status"], "pass");
    }
}
