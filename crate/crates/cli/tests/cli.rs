use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_switchlab"));
    cmd.env_remove("SWITCHLAB_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn payload(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("JSON document");
    doc["payload"].clone()
}

#[test]
fn classify_perfect_channel() {
    let p = payload(&run(&["classify", "--pauli", "0,0,-1"]));
    let u = &p["switch_usefulness"];
    assert_eq!(u["useless_plain"], true);
    assert_eq!(u["useful_under_plus"], true);
    assert_eq!(u["useful_under_minus"], true);
    assert_eq!(p["classification"]["is_ebc"], true);
}

#[test]
fn classify_dephasing_is_completely_useless() {
    let p = payload(&run(&["classify", "--pauli", "0,0,1"]));
    assert_eq!(p["switch_usefulness"]["completely_useless"], true);
}

#[test]
fn classify_identity_is_not_ebc() {
    let p = payload(&run(&["classify", "--pauli", "1,1,1"]));
    assert_eq!(p["classification"]["is_ebc"], false);
    let p = payload(&run(&["classify", "--preset", "identity"]));
    assert_eq!(p["classification"]["is_ebc"], false);
}

#[test]
fn classify_accepts_negative_leading_values_and_tmatrix() {
    let p = payload(&run(&["classify", "--pauli", "-1,0,0"]));
    assert_eq!(p["switch_usefulness"]["useful_under_minus"], true);
    let t = "1,0,0,0,0,0.3,0,0,0,0,0.3,0,0,0,0,0.3";
    let p = payload(&run(&["classify", "--tmatrix", t]));
    assert_eq!(p["classification"]["is_ebc"], true);
}

#[test]
fn classify_kraus_json() {
    let x = r#"[{"re":[0,1,1,0],"im":[0,0,0,0]}]"#;
    let p = payload(&run(&["classify", "--kraus", x]));
    assert_eq!(p["classification"]["is_ebc"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", "--pauli", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["classify"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--pauli", "1,1,1", "--preset", "obs1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--pauli", "1,1,-1"]).status.code(), Some(3));
    assert_eq!(run(&["coherence", "--lambda", "0.8", "--t", "0.5"]).status.code(), Some(3));
    assert_eq!(run(&["switch", "--preset", "perfect", "--control", "1,1,0"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn help_documents_domains() {
    for (sub, needle) in [
        (vec!["classify", "--help"], "[-1, 1]"),
        (vec!["coherence", "--help"], "radians"),
        (vec!["noisy", "--help"], "[-1/3, 1]"),
        (vec!["qrac", "--help"], "[0, 1]"),
        (vec!["steer", "--help"], "[0, 1]"),
        (vec!["switch", "--help"], "norm"),
        (vec!["scan", "census", "--help"], "nonunital"),
        (vec!["scan", "octahedron", "--help"], "Branch"),
        (vec!["selftest", "--help"], "exit code 4"),
    ] {
        let out = run(&sub);
        assert!(out.status.success());
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains(needle), "{sub:?} help lacks {needle:?}:\n{text}");
    }
}

#[test]
fn switch_reports_perfect_correction() {
    let p = payload(&run(&["switch", "--pauli", "0,0,-1"]));
    let t = p["corrected"]["tmatrix"].as_array().unwrap();
    for (i, row) in t.iter().enumerate() {
        for (j, v) in row.as_array().unwrap().iter().enumerate() {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((v.as_f64().unwrap() - expect).abs() < 1e-12);
        }
    }
    assert!((p["pauli"]["q"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn csv_curves() {
    let out = run(&["qrac", "--steps", "10", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# manifest {"));
    assert_eq!(lines.next(), Some("lambda3,success"));
    assert_eq!(lines.clone().count(), 11);
    assert_eq!(lines.last(), Some("1,0.853553390593"));
}

#[test]
fn noisy_sweep_diagonal() {
    let p = payload(&run(&["noisy", "--steps", "4"]));
    let rows = p["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let t = row["t"].as_f64().unwrap();
        let d: Vec<f64> = row["diagonal"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
        assert!((d[0] - t).abs() < 1e-10 && (d[1] - t).abs() < 1e-10 && (d[2] - 1.0).abs() < 1e-10);
    }
}

#[test]
fn seed_from_environment() {
    let out = bin().env("SWITCHLAB_SEED", "99").args(["scan", "octahedron", "--samples", "10"]).output().unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["manifest"]["seed"], 99);
    assert_eq!(doc["payload"]["config"]["seed"], 99);
    let flag = bin()
        .env("SWITCHLAB_SEED", "99")
        .args(["scan", "octahedron", "--samples", "10", "--seed", "5"])
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&flag.stdout).unwrap();
    assert_eq!(doc["manifest"]["seed"], 5);
}

#[test]
fn output_files_replay_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("census.json", vec!["scan", "census", "--samples", "3000", "--seed", "7"]),
        ("census.csv", vec!["scan", "census", "--samples", "3000", "--seed", "7", "--format", "csv"]),
        ("nonunital.json", vec!["scan", "census", "--family", "nonunital", "--samples", "300"]),
        ("conjecture.json", vec!["scan", "conjecture", "--samples", "500", "--threads", "2"]),
        ("octahedron.csv", vec!["scan", "octahedron", "--branch", "minus", "--samples", "2000", "--format", "csv"]),
        ("steer.csv", vec!["steer", "--steps", "20", "--format", "csv"]),
        ("coherence.json", vec!["coherence", "--lambda", "0.5", "--t", "0.1"]),
        ("classify.csv", vec!["classify", "--preset", "phi:0.9", "--format", "csv"]),
    ];
    for (name, args) in cases {
        let path = dir.path().join(name);
        let path_s = path.to_str().unwrap();
        let mut full = args.clone();
        full.extend(["--out", path_s]);
        let out = run(&full);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
        let replay = run(&["replay", path_s]);
        assert_eq!(replay.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&replay.stderr));
        assert!(String::from_utf8_lossy(&replay.stdout).contains("payload identical"));
    }
}

#[test]
fn replay_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qrac.csv");
    let p = path.to_str().unwrap();
    assert!(run(&["qrac", "--steps", "10", "--format", "csv", "--out", p]).status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("1,0.853553390593", "1,0.853553390594")).unwrap();
    assert_eq!(run(&["replay", p]).status.code(), Some(4));
    std::fs::write(&path, "not a manifest").unwrap();
    assert_eq!(run(&["replay", p]).status.code(), Some(2));
}

#[test]
fn selftest_exit_code_matches_report() {
    let out = run(&["selftest"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let fails = text.lines().filter(|l| l.starts_with("FAIL")).count();
    let passes = text.lines().filter(|l| l.starts_with("PASS")).count();
    assert_eq!(fails + passes, 12);
    assert_eq!(out.status.code(), Some(if fails == 0 { 0 } else { 4 }));
}
