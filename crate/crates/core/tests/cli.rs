use std::process::Command;

use serde_json::Value;

fn chainsurg(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chainsurg")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn dual_of_three_two() {
    assert_eq!(chainsurg(&["dual", "--cyclic", "3,2"]), (0, "{\"dual\":\"4\"}\n".to_string()));
}

#[test]
fn exit_codes() {
    assert_eq!(chainsurg(&["classify", "surgery", "--a", "7", "--t", "-1"]).0, 0);
    assert_eq!(chainsurg(&["classify", "surgery", "--a", "6,2,2,2,6,2,2,2", "--t", "1"]).0, 2);
    assert_eq!(chainsurg(&["classify", "surgery", "--a", "1,2", "--t", "0"]).0, 1);
    assert_eq!(chainsurg(&["bogus"]).0, 1);
    assert_eq!(chainsurg(&["--help"]).0, 0);
}

#[test]
fn every_json_line_round_trips() {
    let commands: [&[&str]; 8] = [
        &["member", "--a", "2,2,2,3,2"],
        &["embed", "--a", "2,2,5", "--kind", "positive"],
        &["homology", "--a", "2,2,2,6,2,2,2,6"],
        &["classify", "surgery", "--a", "2,2,2,3,2", "--t", "-1"],
        &["classify", "bundle", "--matrix", "-1,-4,0,-1"],
        &["braid", "--a", "5,2", "--t", "2"],
        &["fixtures", "--max-k", "2", "--max-xy", "1"],
        &["verify", "--max-n", "4"],
    ];
    for args in commands {
        let (code, out) = chainsurg(args);
        assert!(code == 0 || code == 2, "{args:?}");
        assert!(!out.is_empty(), "{args:?}");
        for line in out.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&v).unwrap(), line, "{args:?}");
        }
    }
}

#[test]
fn verify_is_independent_of_worker_count() {
    let runs: Vec<String> = ["1", "2", "5"]
        .iter()
        .map(|w| chainsurg(&["verify", "--max-n", "5", "--csv", "--workers", w]).1)
        .collect();
    assert!(runs.windows(2).all(|p| p[0] == p[1]));
    assert_eq!(runs[0].lines().count(), 1 + 60);
}

#[test]
fn verify_zero_mismatches_to_four() {
    let (_, out) = chainsurg(&["verify", "--max-n", "4", "--mode", "relaxed"]);
    let rows: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["agree"] == Value::Bool(true)));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("chainsurg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.jsonl");
    let (code, stdout) = chainsurg(&["verify", "--max-n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!((code, stdout.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 9);
    std::fs::remove_dir_all(&dir).unwrap();
}
