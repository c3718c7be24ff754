use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracdesign")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_headline() {
    let o = run(&["classify", "--space", "2,2,2,3", "--size", "12", "--strength", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("total=44 orbits=3 sizes=2,6,36"));
    assert!(text.contains("f = 1/2 + 1/2*x1*x2*x3\n"));
}

#[test]
fn classify_json() {
    let o = run(&["classify", "--space", "2,2,2,2,3", "--size", "24", "--strength", "3", "--json", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["total"], 56);
    let sizes: Vec<u64> = doc["orbits"].as_array().unwrap().iter().map(|o| o["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, [2, 6, 48]);
    assert_eq!(doc["orbits"][0]["representative"].as_array().unwrap().len(), 24);
    assert_eq!(doc["orbits"][0]["mu"]["constant"], "24");
}

#[test]
fn contrast_line_and_json() {
    let f4 = fixture("f4.csv");
    let o = run(&["contrast", "--space", "2,2,3", "--design", path(&f4)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (first, json) = text.split_once('\n').unwrap();
    assert_eq!(first, "f(z) = 6 + 2*z{2(1)} + z{12(11)} - z{23(12)} + z{123(111)}");
    let doc: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(doc["constant"], "6");
    assert_eq!(doc["terms"].as_array().unwrap().len(), 4);
    assert_eq!(doc["terms"][0], serde_json::json!({"J": [2], "itilde": [1], "value": "2"}));
}

#[test]
fn proper_sizes() {
    let o = run(&["sizes", "--space", "2,2,2,2,3", "--strength", "3", "--proper"]);
    assert_eq!(stdout(&o), "24\n");
    let o = run(&["sizes", "--space", "2,2,3", "--strength", "1"]);
    assert_eq!(stdout(&o), "6,12\n");
}

#[test]
fn indicator_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let theta = dir.path().join("theta.json");
    let f4 = fixture("f4.csv");
    let o = run(&["indicator", "--space", "2,2,3", "--design", path(&f4), "--json-out", path(&theta)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "f = 1/2 - 1/2*x1*x2 - 1/4*x2*x3 - 1/4*x1*x2*x3 - 1/4*x2*x3^2 + 3/4*x1*x2*x3^2\n");
    let o = run(&["verify", "--space", "2,2,3", "--theta", path(&theta)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "idempotent: pass\nrelations: pass\nruns: 6\n");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"theta": [{"exponents": [0, 0, 0], "value": "1/3"}]}"#).unwrap();
    let o = run(&["verify", "--space", "2,2,3", "--theta", path(&bad)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "idempotent: fail\nrelations: fail\n");

    let o = run(&["verify", "--space", r#"{"factors": [[0, 1], [0, 1], [0, 1, 2]]}"#, "--theta", path(&theta)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumerate_then_strength() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["enumerate", "--space", "2,2,2,3", "--size", "12", "--strength", "2", "--out-dir", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "solutions=44 size=12 strength=2\n");
    let mut files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 44);
    for file in files {
        let o = run(&["strength", "--space", "2,2,2,3", "--design", path(&file)]);
        let text = stdout(&o);
        let t: usize = text.lines().next().unwrap().strip_prefix("strength=").unwrap().parse().unwrap();
        assert!(t >= 2, "{}", file.display());
        assert_eq!(text.lines().count(), 1 + 15);
    }
}

#[test]
fn enumerate_output_is_deterministic() {
    let args = ["enumerate", "--space", "2,2,2,3", "--size", "12", "--strength", "2"];
    let one = run(&[&args[..], &["--jobs", "1"]].concat());
    let four = run(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
    let text = stdout(&one);
    assert_eq!(text.matches("x1,x2,x3,x4\n").count(), 44);
    assert!(text.ends_with("\nsolutions=44 size=12 strength=2\n"));

    let canonical = run(&[&args[..], &["--canonical-only"]].concat());
    assert!(stdout(&canonical).ends_with("solutions=3 size=12 strength=2\n"));

    let json = run(&[&args[..], &["--json"]].concat());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 44);
    assert_eq!(stderr(&json), "solutions=44 size=12 strength=2\n");
}

#[test]
fn strength_report() {
    let f3 = fixture("f3.csv");
    let o = run(&["strength", "--space", "3,3,3,3", "--design", path(&f3)]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "strength=2");
    assert_eq!(lines[1], "J={1} counts=3,3,3 uniform");
    assert_eq!(lines[5], "J={1,2} counts=1,1,1,1,1,1,1,1,1 uniform");
    assert!(lines[11].starts_with("J={1,2,3} ") && lines[11].ends_with(" nonuniform"));
}

#[test]
fn relations_output() {
    let o = run(&["relations", "--space", "2,2,3"]);
    assert_eq!(stdout(&o).lines().count(), 12);
    assert!(stdout(&o).starts_with("t000 - t000^2 - t100^2 - t010^2 - t110^2 = 0\n"));

    let o = run(&["relations", "--space", "2,2,3", "--strength", "1"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 17);
    assert_eq!(text.lines().nth(12), Some("12*t000 + 8*t002 - s = 0"));
    assert_eq!(text.lines().last(), Some("-8*t001 = 0"));

    let o = run(&["relations", "--space", "2,2,3", "--size", "6", "--format", "cas-ideal"]);
    let text = stdout(&o);
    assert!(text.starts_with("R = QQ[t000,"));
    assert!(!text.contains(", s]"));
    assert!(text.contains("  12*t000 + 8*t002 - 6\n"));
}

#[test]
fn exit_codes() {
    let f4 = fixture("f4.csv");
    let incompatible = run(&["enumerate", "--space", "2,2,3", "--size", "5", "--strength", "1"]);
    assert_eq!(incompatible.status.code(), Some(2));
    assert!(stderr(&incompatible).contains("incompatible size"));
    let empty = run(&["classify", "--space", "2,2,3", "--size", "0", "--strength", "1"]);
    assert_eq!(empty.status.code(), Some(2));

    let expensive = run(&["enumerate", "--space", "2,2,2,2,3", "--size", "24", "--strength", "2"]);
    assert_eq!(expensive.status.code(), Some(2));
    assert!(stderr(&expensive).contains("--force"));

    for args in [
        &["sizes", "--space", "2,x", "--strength", "1"][..],
        &["sizes", "--space", "2,1", "--strength", "1"],
        &["sizes", "--space", "2,2", "--strength", "3"],
        &["sizes", "--space", r#"{"factors": [[0, 0.5]]}"#, "--strength", "1"],
        &["indicator", "--space", "2,2", "--design", path(&f4)],
        &["indicator", "--space", "2,2,3", "--design", "missing.csv"],
        &["relations", "--space", "2,2,3", "--format", "maple"],
        &["frobnicate"],
        &["sizes", "--strength", "1"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{:?}", args);
        assert!(!stderr(&o).is_empty());
        assert!(stdout(&o).is_empty());
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn space_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("space.json");
    std::fs::write(&spec, r#"{"factors": [[0, 1], [0, 1], [0, 1, 2]]}"#).unwrap();
    let o = run(&["relations", "--space", path(&spec)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("t000 - t000^2 = 0\n"));
}
