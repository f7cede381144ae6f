use std::process::Command;

fn edgemap(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_edgemap")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = std::env::temp_dir().join(format!("edgemap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("z7.txt");
    let path = file.to_str().unwrap();
    let (code, text) = edgemap(&["construct", "z7_difference", "--out", path]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("PASS no exclusive 2K2"));
    let (code, _) = edgemap(&["verify", path, "-c", "exclusive:2K2"]);
    assert_eq!(code, 0);
    // a false claim exits with the failure code
    let (code, text) = edgemap(&["verify", path, "-c", "free:K1,2"]);
    assert_eq!(code, 1, "{text}");
    let (code, text) = edgemap(&["--json", "detect", path, "g6:Bw", "free"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["outputs"]["certificate"].is_object());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_records_are_reproducible() {
    let args = ["--json", "--reproducible", "compute", "g", "2K2"];
    let (a, b) = (edgemap(&args), edgemap(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert!(v.get("wall_ms").is_none());
    assert_eq!(v["outputs"]["report"]["upper"]["value"], 5);
    assert_eq!(v["hashes"]["outputs"].as_str().unwrap().len(), 64);
}

#[test]
fn text_and_json_agree() {
    let (_, text) = edgemap(&["--reproducible", "oracle", "ex", "6", "K3"]);
    let (_, json) = edgemap(&["--json", "--reproducible", "oracle", "ex", "6", "K3"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(text.trim(), format!("ex(6,K3) = {}", v["outputs"]["ex"]));
    assert_eq!(v["outputs"]["ex"], 9);
}

#[test]
fn undecided_compute_exits_skipped() {
    let (code, text) = edgemap(&["--reproducible", "compute", "w", "K4", "--nmax", "9", "--budget", "0"]);
    assert_eq!(code, 3, "{text}");
    assert!(text.contains("undecided"));
}

#[test]
fn errors_exit_with_their_own_code() {
    let (code, _) = edgemap(&["reproduce", "no_such_entry"]);
    assert_eq!(code, 4);
}
