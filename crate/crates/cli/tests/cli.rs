use std::path::Path;
use std::process::Command;

use semizd_cli::{exit_code, run_commands, Session};

fn semizd() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semizd"))
}

fn demo() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../sessions/demo.json")
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn summary_line(stdout: &[u8]) -> String {
    String::from_utf8_lossy(stdout).lines().last().unwrap().to_string()
}

#[test]
fn export_round_trips_to_identical_tables() {
    let session = Session::load(&demo()).unwrap();
    let text = serde_json::to_string(&session.export()).unwrap();
    let again = Session::parse(&text).unwrap();
    for (name, r) in &session.rings {
        assert!(again.rings[name].same_tables(r), "{name}");
        assert_eq!(again.rings[name].names(), r.names());
    }
    for (name, m) in &session.modules {
        assert!(again.modules[name].module.same_tables(&m.module), "{name}");
    }
    for (name, m) in &session.monoids {
        assert_eq!(again.monoids[name].cayley_rows(), m.cayley_rows(), "{name}");
        assert_eq!(again.monoids[name].kind(), m.kind(), "{name}");
    }
    for (name, s) in &session.submodules {
        assert_eq!(again.submodules[name].submodule.members(), s.submodule.members());
    }
    for (name, s) in &session.series {
        assert_eq!(again.series[name].series, s.series);
    }
    // exporting the export changes nothing
    assert_eq!(again.export(), session.export());
}

#[test]
fn demo_session_passes_and_is_deterministic() {
    let first = semizd().arg("run").arg(demo()).output().unwrap();
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let second = semizd().arg("run").arg(demo()).output().unwrap();
    assert_eq!(summary_line(&first.stdout), summary_line(&second.stdout));
}

#[test]
fn malformed_table_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "bad.json",
        r#"{"rings": {"bad": {"table": {"add": [[0,1],[1,1]], "mul": [[0,0],[0,1]], "zero": 0, "one": 1}}}}"#,
    );
    let out = semizd().arg("run").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rings.bad"));
    let out = semizd().arg("validate").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_window_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "big.json",
        r#"{"rings": {"R": {"zmod": 6}}, "monoids": {"N": {"free": 1}},
            "commands": [{"command": "verify", "statement": "monoid-equivalence", "ring": "R", "monoid": "N",
                          "window": {"degree": 2}}]}"#,
    );
    let out = semizd().arg("run").arg(&p).args(["--budget", "100"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"skipped\""));

    // the flag beats the session setting
    let out = semizd().arg("run").arg(&p).args(["--budget", "100000"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn budget_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "env.json",
        r#"{"rings": {"R": {"zmod": 6}}, "monoids": {"N": {"free": 1}},
            "commands": [{"command": "verify", "statement": "content-regularity", "ring": "R", "monoid": "N"}]}"#,
    );
    let out = semizd().arg("run").arg(&p).env("SEMIZD_BUDGET", "10").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn command_errors_continue_and_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "err.json",
        r#"{"rings": {"R": {"zmod": 6}}, "modules": {"M": {"ring_as_module": "R"}},
            "monoids": {"N": {"free": 1}},
            "commands": [{"command": "counterexample", "module": "M", "monoid": "N"},
                         {"command": "analyze", "module": "M"}]}"#,
    );
    let out = semizd().arg("run").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().contains("\"status\":\"ok\""));
}

#[test]
fn unwritable_output_exits_with_two() {
    let out = semizd()
        .arg("run")
        .arg(demo())
        .args(["--output", "/nonexistent-dir/report.jsonl"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_precedence() {
    let session = Session::parse(
        r#"{"rings": {"R": {"zmod": 6}}, "monoids": {"N": {"free": 1}},
            "commands": [{"command": "verify", "statement": "content-regularity", "ring": "R", "monoid": "N"},
                         {"command": "analyze", "module": "missing"}]}"#,
    )
    .unwrap();
    let mut records = run_commands(&session, Some(10));
    assert_eq!(exit_code(&records), 2);
    records.pop();
    assert_eq!(exit_code(&records), 3);
    records[0].status = semizd_cli::Status::Counterexample;
    assert_eq!(exit_code(&records), 1);
}
