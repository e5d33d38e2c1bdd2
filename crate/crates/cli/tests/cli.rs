use std::path::Path;
use std::process::{Command, Output};

fn srs(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srs"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("run srs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

const LOCH_NESS: &str = r#"{"format":"tree-spec/1","root":0,"nodes":[
  {"id":0,"label":"S0","children":[],"tail":{"kind":"ray","unit":["S1"]}}]}"#;

#[test]
fn tower_stages_check_tight_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("spec.json"), LOCH_NESS).unwrap();
    let built = srs(dir.path(), &["build", "--spec", "spec.json", "--depth", "2", "--out", "tower"]);
    assert_eq!(code(&built), 0);
    let summary = stdout_json(&built);
    let lengths: Vec<u64> = summary["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["frontier"][0]["length"].as_u64().unwrap())
        .collect();
    assert_eq!(lengths, vec![3, 9, 15]);
    for k in 0..3 {
        let file = format!("tower/stage-{k}.json");
        assert_eq!(code(&srs(dir.path(), &["check", "tight", &file])), 0);
        assert_eq!(code(&srs(dir.path(), &["check", "rigid", &file])), 0);
    }
    let replay = srs(
        dir.path(),
        &["replay", "tower/stage-0.json", "tower/moves.json", "--out", "again.json"],
    );
    assert_eq!(code(&replay), 0);
    assert_eq!(
        std::fs::read(dir.path().join("again.json")).unwrap(),
        std::fs::read(dir.path().join("tower/stage-2.json")).unwrap()
    );
}

#[test]
fn classify_reports_invariants() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("spec.json"), LOCH_NESS).unwrap();
    let o = srs(dir.path(), &["classify", "--spec", "spec.json"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["genus"], "infinite");
    assert_eq!(v["orientability"], "orientable");
    assert_eq!(v["end_flags"][0]["planar"], false);
}

#[test]
fn double_banana_is_tight_but_flexible() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&srs(dir.path(), &["seed", "double-banana", "--out", "b.json"])), 0);
    assert_eq!(code(&srs(dir.path(), &["check", "tight", "b.json"])), 0);
    let rigid = srs(dir.path(), &["check", "rigid", "b.json", "--seed", "11"]);
    assert_eq!(code(&rigid), 1);
    let v = stdout_json(&rigid);
    assert_eq!(v["report"]["dof"], 1);
    assert_eq!(v["report"]["seed"], 11);
    assert_eq!(v["verdict"]["verdict"], "flexible");
}

#[test]
fn repair_fixes_the_violating_join() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&srs(dir.path(), &["seed", "violating-join", "--out", "v.json"])), 0);
    assert_eq!(code(&srs(dir.path(), &["check", "tight", "v.json"])), 1);
    assert_eq!(code(&srs(dir.path(), &["check", "girth", "v.json"])), 1);
    let repaired = srs(dir.path(), &["repair", "v.json", "--out", "r.json", "--max-moves", "100"]);
    assert_eq!(code(&repaired), 0);
    let v = stdout_json(&repaired);
    assert!(v["maxwell_trace"].as_array().unwrap().iter().all(|f| f == 6));
    assert_eq!(code(&srs(dir.path(), &["check", "tight", "r.json"])), 0);
    assert_eq!(code(&srs(dir.path(), &["check", "girth", "r.json"])), 0);
    assert_eq!(code(&srs(dir.path(), &["replay", "v.json", "r.moves.json", "--out", "r2.json"])), 0);
    assert_eq!(
        std::fs::read(dir.path().join("r.json")).unwrap(),
        std::fs::read(dir.path().join("r2.json")).unwrap()
    );
}

#[test]
fn exit_codes_for_budget_and_usage() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&srs(dir.path(), &["seed", "torus-seed", "--out", "t.json"])), 0);
    assert_eq!(code(&srs(dir.path(), &["check", "girth", "t.json", "--method", "exhaustive"])), 3);
    assert_eq!(code(&srs(dir.path(), &["check", "girth", "t.json"])), 0);
    assert_eq!(code(&srs(dir.path(), &["repair", "t.json", "--out", "x.json", "--max-moves", "0"])), 0);
    assert_eq!(code(&srs(dir.path(), &["check", "nonsense", "t.json"])), 2);
    assert_eq!(code(&srs(dir.path(), &["check", "tight", "missing.json"])), 2);
    std::fs::write(dir.path().join("bad.json"), "{\"format\":\"srs-mesh/9\"}").unwrap();
    assert_eq!(code(&srs(dir.path(), &["invariants", "bad.json"])), 2);
    assert_eq!(code(&srs(dir.path(), &["seed", "violating-join", "--out", "v.json"])), 0);
    assert_eq!(code(&srs(dir.path(), &["repair", "v.json", "--out", "x.json", "--max-moves", "0"])), 3);
}

#[test]
fn invariants_export_and_schwarz() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&srs(dir.path(), &["seed", "projective-seed", "--out", "p.json"])), 0);
    let inv = stdout_json(&srs(dir.path(), &["invariants", "p.json"]));
    assert_eq!(inv["reduced_genus"], 0.5);
    assert_eq!(inv["hole_lengths"], serde_json::json!([6]));
    let dot = srs(dir.path(), &["export", "--format", "dot", "p.json"]);
    assert!(String::from_utf8(dot.stdout).unwrap().starts_with("graph mesh {"));
    let json = srs(dir.path(), &["export", "--format", "json", "p.json"]);
    assert_eq!(stdout_json(&json)["format"], "srs-mesh/1");
    let rank = stdout_json(&srs(dir.path(), &["rank", "p.json"]));
    assert_eq!(rank["dof"], 0);
    let block = stdout_json(&srs(dir.path(), &["schwarz", "--m", "2"]));
    assert_eq!(block["maxwell"], block["predicted_maxwell"]);
    assert_eq!(block["deficiency"], 30);
}
