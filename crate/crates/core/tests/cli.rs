use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn meshtopo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meshtopo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TABLE2: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/table2.csv");

#[test]
fn layers_reproduces_table2_with_min_q() {
    let out = meshtopo(&["layers", "--csv", TABLE2, "--q-sense", "min"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let layers: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(6).unwrap())
        .collect();
    assert_eq!(layers, ["2", "1", "2", "1", "2", "1", "1", "1", "1", "1"]);
}

#[test]
fn gen_solve_render_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let inst = tmp.path().join("inst.json");
    let out = meshtopo(&["gen", "--n", "10", "--seed", "4", "--hills", "2", "--amp", "10", "--sigma", "20", "--out", s(&inst)]);
    assert!(out.status.success());

    let dir = tmp.path().join("out");
    let out = meshtopo(&["solve", "--instance", s(&inst), "--g", "2", "--max-cluster", "5", "--q-sense", "min", "--alpha", "0.002", "--beta", "1.5", "--out-dir", s(&dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let report = dir.join("report.csv");
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("approach,weights,L,C,Delta,Q,pareto_layer\nMST,,"));
    assert_eq!(text.lines().count(), 1 + 1 + 2 * 10);

    let out = meshtopo(&["layers", "--csv", s(&report), "--q-sense", "min"]);
    assert!(out.status.success(), "stored layers must re-derive");

    let result = dir.join("result.json");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&result).unwrap()).unwrap();
    assert_eq!(json["config"]["alpha"], 0.002);
    assert_eq!(json["config"]["max_cluster"], 5);

    let svg = tmp.path().join("mstp.svg");
    let out = meshtopo(&["render", "--result", s(&result), "--entry", "MSTP-00", "--out", s(&svg)]);
    assert!(out.status.success());
    assert!(fs::read_to_string(&svg).unwrap().contains("<svg"));

    let out = meshtopo(&["render", "--result", s(&result), "--entry", "nope", "--out", s(&svg)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();

    let out = meshtopo(&["solve", "--instance", "/definitely/missing.json", "--out-dir", s(tmp.path())]);
    assert_eq!(out.status.code(), Some(4));

    let bad = tmp.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let out = meshtopo(&["solve", "--instance", s(&bad), "--out-dir", s(tmp.path())]);
    assert_eq!(out.status.code(), Some(3));

    let split = tmp.path().join("split.json");
    fs::write(
        &split,
        r#"{"alpha": 0.001, "beta": 1, "nodes": [
            {"id": 0, "x": 0, "y": 0, "z": 0, "s": 0.5},
            {"id": 1, "x": 1, "y": 0, "z": 0, "s": 0.5},
            {"id": 2, "x": 5, "y": 5, "z": 0, "s": 0.5}],
            "edges": [[0, 1]]}"#,
    )
    .unwrap();
    let out = meshtopo(&["solve", "--instance", s(&split), "--out-dir", s(tmp.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("{0, 1}, {2}"));

    let out = meshtopo(&["gen", "--n", "0", "--seed", "1", "--out", s(&tmp.path().join("x.json"))]);
    assert_eq!(out.status.code(), Some(3));

    let tampered = tmp.path().join("t.csv");
    fs::write(&tampered, "L,C,Delta,Q,pareto_layer\n1,1,1,1,2\n").unwrap();
    let out = meshtopo(&["layers", "--csv", s(&tampered), "--q-sense", "min"]);
    assert_eq!(out.status.code(), Some(3));
}
