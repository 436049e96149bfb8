use std::process::Command;

use serde_json::{json, Value};

fn qhall(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qhall")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

#[test]
fn euler_on_a2() {
    assert_eq!(qhall(&["--preset", "A2", "euler", "--a", "1,0", "--b", "0,1"]), (json!({"value": -1}), 0));
}

#[test]
fn braid_check_on_a2() {
    let (v, code) = qhall(&["braid-check", "--preset", "A2", "--gen", "E1"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
}

#[test]
fn verify_all_passes() {
    let (v, code) = qhall(&["verify", "--suite", "all", "--json"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().map(Vec::len), Some(14));
}

#[test]
fn config_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("qhall-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a3.json");
    std::fs::write(&path, r#"{"name": "A3", "quiver": {"vertices": 3, "arrows": [[1, 2, 1], [2, 3, 1]]}, "eps": [1, 1, 1]}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(qhall(&["--config", p, "euler", "--a", "0,1,0", "--b", "0,0,1"]), (json!({"value": -1}), 0));

    std::fs::write(&path, r#"{"name": "bad", "quiver": {"vertices": 2, "arrows": [[1, 5, 1]]}, "eps": [1, 1]}"#).unwrap();
    let (v, code) = qhall(&["--config", p, "classify"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_object(), "{v}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cap_violations_are_error_objects() {
    let (v, code) = qhall(&["--preset", "A2", "--cap", "1", "hall-mul", "--a", "1.0#0", "--b", "1.0#0"]);
    assert_eq!(code, 2);
    assert!(v["error"]["kind"].is_string(), "{v}");
}
