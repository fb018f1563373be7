use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenes() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenes")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wirtinger"))
        .args(args)
        .output()
        .unwrap()
}

fn write_tmp(name: &str, text: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn compute_and_check_succeed_on_shipped_scenes() {
    for file in ["minimal.json", "chain.json"] {
        let path = scenes().join(file);
        for cmd in ["compute", "check"] {
            let out = run(&[cmd, path.to_str().unwrap(), "--oracle"]);
            assert_eq!(
                out.status.code(),
                Some(0),
                "{cmd} {file}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
        }
    }
}

#[test]
fn json_output_parses() {
    let path = scenes().join("chain.json");
    let out = run(&["compute", path.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["subvarieties"].as_array().unwrap().len(), 3);
    assert_eq!(v["chains"][1]["verdict"], "PASS");
}

#[test]
fn single_precision_runs() {
    let path = scenes().join("chain.json");
    let out = run(&[
        "compute",
        path.to_str().unwrap(),
        "--scalar",
        "f32",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"f32\""));
}

#[test]
fn unresolved_name_is_an_input_error() {
    let path = write_tmp(
        "unresolved.json",
        r#"{"space": {"n": 1, "structure": "standard"},
            "subvarieties": [{"name": "M", "basis": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}],
            "chains": [["M", "Y"]]}"#,
    );
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Y"));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["compute", "/nonexistent/scene.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn properties_pass_on_a_small_run() {
    let out = run(&[
        "properties",
        "--seed",
        "3",
        "--size",
        "10",
        "--format",
        "json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 3);
}
