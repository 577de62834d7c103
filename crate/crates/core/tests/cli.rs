use std::process::Command;

fn arena() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arena"))
}

#[test]
fn league_writes_results_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results.json");
    let replays = dir.path().join("replays");
    let run = arena()
        .args(["league", "--agents", "heuristic,random", "--maps", "2", "--repeats", "2", "--tick-limit", "300"])
        .arg("--out")
        .arg(&out)
        .arg("--replays")
        .arg(&replays)
        .output()
        .unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let table = String::from_utf8(run.stdout).unwrap();
    assert!(table.contains("heuristic") && table.contains("Wins"), "{table}");

    let result: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(result["complete"], true);
    assert_eq!(result["games"].as_array().unwrap().len(), 4);

    let replay = std::fs::read_dir(&replays).unwrap().next().unwrap().unwrap().path();
    let check = arena().arg("replay").arg("--in").arg(&replay).output().unwrap();
    assert!(check.status.success());
    assert!(String::from_utf8_lossy(&check.stdout).contains("verified"));
}

#[test]
fn bench_prints_json_report() {
    let run = arena().args(["bench", "--op", "copy", "--seconds", "0.2"]).output().unwrap();
    assert!(run.status.success());
    let first = String::from_utf8(run.stdout).unwrap();
    let report: serde_json::Value = serde_json::from_str(first.lines().next().unwrap()).unwrap();
    assert_eq!(report["op"], "copy");
    assert!(report["kops"].as_f64().unwrap() > 0.0);
}

#[test]
fn bad_inputs_fail_cleanly() {
    let unknown = arena().args(["league", "--agents", "nosuch,random"]).output().unwrap();
    assert!(!unknown.status.success());
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("nosuch"));

    let dir = tempfile::tempdir().unwrap();
    let truncated = dir.path().join("cut.json");
    std::fs::write(&truncated, "{\"version\":1,\"seed\":3,\"param").unwrap();
    let run = arena().arg("replay").arg("--in").arg(&truncated).output().unwrap();
    assert!(!run.status.success());
}
