use std::path::Path;
use std::process::{Command, Output};

fn qcohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcohom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn classify_matches_golden_table() {
    let o = qcohom(&["classify", "--dihedral-2d", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let golden =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/classify.csv")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn classify_examples() {
    for (preset, factors) in [("cyclic_5", "[]"), ("dihedral_8", "[2]"), ("I213", "[2]")] {
        let o = qcohom(&["classify", "--preset", preset, "--format", "csv"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(csv_rows(&stdout(&o))[0][4], factors, "{preset}");
    }
}

#[test]
fn invariants_table() {
    let o = qcohom(&["invariants", "--preset", "pg", "--format", "csv"]);
    assert_eq!(stdout(&o), "cycle,class,value\n0,0,0/1\n0,1,1/2\n");
    let o = qcohom(&["invariants", "--preset", "pg", "--class", "0", "--format", "csv"]);
    assert!(csv_rows(&stdout(&o)).iter().all(|r| r[2] == "0/1"));
    let o = qcohom(&["invariants", "--preset", "pg", "--class", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn extinction_rows() {
    let o = qcohom(&["extinctions", "--preset", "pg", "--kmax", "2", "--format", "csv"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 25);
    let extinct: Vec<(String, String)> =
        rows.iter().filter(|r| r[2] == "true").map(|r| (r[0].clone(), r[1].clone())).collect();
    assert_eq!(extinct, vec![("-1".into(), "0".into()), ("1".into(), "0".into())]);
    assert!(rows.iter().filter(|r| r[2] == "true").all(|r| r[3] == "m"));
    for preset in ["cyclic_4", "centered_rectangular"] {
        let o = qcohom(&["extinctions", "--preset", preset, "--format", "csv"]);
        assert!(csv_rows(&stdout(&o)).iter().all(|r| r[r.len() - 2] == "false"), "{preset}");
    }
}

#[test]
fn diffraction_output() {
    let a = qcohom(&["diffract", "--preset", "pg", "--kmax", "3", "--seed", "11", "--format", "csv"]);
    let b = qcohom(&["diffract", "--preset", "pg", "--kmax", "3", "--seed", "11", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    for r in csv_rows(&stdout(&a)) {
        let dark = r[4] == "0.000000";
        assert_eq!(dark, r[6] == "true", "{r:?}");
        assert_eq!(dark, r[1] == "0" && r[0].parse::<i64>().unwrap() % 2 != 0, "{r:?}");
    }
    let c4 = qcohom(&["diffract", "--preset", "cyclic_4", "--kmax", "2", "--format", "csv"]);
    let rows = csv_rows(&stdout(&c4));
    let intensity =
        |k: (i64, i64)| rows.iter().find(|r| r[0] == k.0.to_string() && r[1] == k.1.to_string()).unwrap()[4].clone();
    for r in &rows {
        let k = (r[0].parse::<i64>().unwrap(), r[1].parse::<i64>().unwrap());
        // Rotation by a quarter turn permutes the box.
        assert_eq!(intensity(k), intensity((k.1, -k.0)));
    }
    let o = qcohom(&["diffract", "--preset", "c3xc3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("no embedding"));
}

#[test]
fn selfcheck_modes() {
    let o = qcohom(&["selfcheck", "--preset", "pg", "--preset", "dihedral_4", "--preset", "I213"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qcohom(&["selfcheck", "--preset", "pg", "--inject-sign-flip", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL,km-identity")));
    let o = qcohom(&["selfcheck", "--preset", "pg", "--modulus", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL,torsion,pg") && l.contains("not killed by 1")));
}

#[test]
fn descriptor_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("group.json");
    let l = dir.path().join("lattice.json");
    std::fs::write(
        &g,
        r#"{ "name": "p4", "rank": 2, "generators": [ { "label": "r", "matrix": [[0, -1], [1, 0]] } ] }"#,
    )
    .unwrap();
    std::fs::write(&l, r#"{ "rank": 2, "embedding": [[1, 0], [0, 1]] }"#).unwrap();
    let o = qcohom(&["classify", "--group", g.to_str().unwrap(), "--lattice", l.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("p4,4,2,[]"));

    std::fs::write(&g, "{\n  \"rank\": 2,\n  \"generators\": [ oops ]\n}").unwrap();
    let o = qcohom(&["classify", "--group", g.to_str().unwrap(), "--lattice", l.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = qcohom(&["classify", "--group", "/nonexistent.json", "--lattice", l.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.json");
    let o = qcohom(&["classify", "--preset", "rectangular", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let first = std::fs::read(&out).unwrap();
    qcohom(&["classify", "--preset", "rectangular", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(std::fs::read(&out).unwrap(), first);
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v[0]["factors"], serde_json::json!([2, 2]));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn preset_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("pg.json"),
        r#"{ "name": "pg", "kind": "explicit",
             "group": { "rank": 2, "generators": [ { "label": "m", "matrix": [[0, 1], [1, 0]] } ] } }"#,
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qcohom"))
        .args(["classify", "--preset", "pg", "--format", "csv"])
        .env("QCOHOM_PRESET_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(csv_rows(&stdout(&o))[0][4], "[]");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qcohom(&["classify", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(qcohom(&["invariants"]).status.code(), Some(2));
}
