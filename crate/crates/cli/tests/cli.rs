use std::process::{Command, Output};

use mfbranch::branching::{BranchingExpansion, Label};
use mfbranch::verify::{Status, VerificationReport};

fn mfbranch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfbranch"))
        .args(args)
        .env_remove("MFBRANCH_LEVELS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sl2_tensor_example() {
    let o = mfbranch(&["branch", "tensor", "--algebra", "sl2R", "--mu", "3", "--nu", "2", "--levels", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let e: BranchingExpansion = serde_json::from_slice(&o.stdout).unwrap();
    let want: Vec<Label> = (0..=8).map(|k| Label::irrep(&[5 + 2 * k])).collect();
    assert_eq!(e.labels(), want);
    assert!(e.terms.iter().all(|t| t.mult.to_string() == "1"));
    let text = stdout(&mfbranch(&["branch", "tensor", "--algebra", "sl2R", "--mu", "3", "--nu", "2", "--levels", "8"]));
    assert!(text.contains("π_5 ⊕ π_7 ⊕"), "{text}");
}

#[test]
fn pan_nodes_of_c4() {
    let o = mfbranch(&["tables", "pan", "--type", "C", "--rank", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let nodes: Vec<u64> = v.as_array().unwrap().iter().map(|n| n["node"].as_u64().unwrap()).collect();
    assert_eq!(nodes, vec![4]);
}

#[test]
fn verify_type_a3_passes() {
    let o = mfbranch(&["verify", "thmF", "--type", "A", "--rank", "3", "--kmax", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rs: Vec<VerificationReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!rs.is_empty());
    assert!(rs.iter().all(|r| r.status == Status::Pass && r.elapsed_ms.is_none()));
}

#[test]
fn timings_flag_keeps_elapsed() {
    let o = mfbranch(&["verify", "thmF", "--type", "A", "--rank", "2", "--kmax", "2", "--format", "json", "--timings"]);
    let rs: Vec<VerificationReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(rs.iter().all(|r| r.elapsed_ms.is_some()));
}

#[test]
fn exit_codes() {
    assert_eq!(mfbranch(&["--help"]).status.code(), Some(0));
    assert_eq!(mfbranch(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mfbranch(&["branch", "hks", "--algebra", "sl2R"]).status.code(), Some(2));
    let o = mfbranch(&["branch", "hks", "--algebra", "nonsense", "--mu", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = mfbranch(&["branch", "hks", "--algebra", "su(2,1)", "--mu", "1,2,3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotScalarType"));
    let o = mfbranch(&["branch", "sl2", "--which", "c", "--m", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ParameterError"));
    let o = mfbranch(&["tables", "pan", "--type", "G", "--rank", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("InvalidType"));
    assert_eq!(mfbranch(&["tables", "pan", "--type", "C"]).status.code(), Some(2));
    assert_eq!(mfbranch(&["tables", "pan", "--type", "E", "--rank", "6"]).status.code(), Some(0));
    assert_eq!(mfbranch(&["tables", "pan", "--type", "F4"]).status.code(), Some(0));
}

#[test]
fn negative_weights_parse() {
    let o = mfbranch(&["branch", "hks", "--algebra", "su(2,1)", "--mu", "-2,-2,4", "--levels", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = mfbranch(&["mult", "sp2-w", "--lambda1", "5", "--lambda2", "-2", "--p", "3", "--q", "-4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn structured_output_is_byte_stable() {
    for args in [
        &["branch", "hks", "--algebra", "sp(3,R)", "--mu", "4,4,4", "--levels", "4", "--format", "json"][..],
        &["branch", "upq", "--p", "2", "--q", "1", "--mu", "1,0,6", "--levels", "3", "--format", "json"],
        &["verify", "thmE", "--max-rank", "3", "--kmax", "2", "--format", "json"],
        &["export", "tables"],
    ] {
        let a = mfbranch(args);
        let b = mfbranch(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn expansions_round_trip() {
    for args in [
        &["branch", "hks", "--algebra", "so*(8)", "--mu", "-3,-3,-3,-3", "--levels", "3", "--format", "structured"][..],
        &["branch", "sl2", "--which", "f", "--m", "2", "--n", "3", "--levels", "4", "--format", "json"],
        &["mult", "c-count", "--a", "2", "--b", "1", "--format", "json"],
    ] {
        let o = mfbranch(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let e: BranchingExpansion = serde_json::from_slice(&o.stdout).unwrap();
        let again = serde_json::to_string_pretty(&serde_json::to_value(&e).unwrap()).unwrap() + "\n";
        assert_eq!(again.as_bytes(), &o.stdout[..], "{args:?}");
    }
}

#[test]
fn levels_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("mfbranch.toml");
    std::fs::write(&cfg, "levels = 2\nformat = \"json\"\n").unwrap();
    let count = |o: Output| serde_json::from_slice::<BranchingExpansion>(&o.stdout).unwrap().terms.len();
    let base = ["branch", "hks", "--algebra", "sl2R", "--mu", "2", "--format", "json"];

    let run_env = |levels: &str, extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_mfbranch")).args(base).args(extra).env("MFBRANCH_LEVELS", levels).output().unwrap()
    };
    assert_eq!(count(mfbranch(&base)), 11);
    assert_eq!(count(run_env("5", &[])), 6);
    assert_eq!(count(run_env("5", &["--config", cfg.to_str().unwrap()])), 3);
    assert_eq!(count(run_env("5", &["--config", cfg.to_str().unwrap(), "--levels", "7"])), 8);

    let o = Command::new(env!("CARGO_BIN_EXE_mfbranch"))
        .args(["branch", "hks", "--algebra", "sl2R", "--mu", "2", "--config", cfg.to_str().unwrap()])
        .env_remove("MFBRANCH_LEVELS")
        .output()
        .unwrap();
    assert_eq!(count(o), 3);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables.json");
    let o = mfbranch(&["export", "tables", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v.is_object());
}

#[test]
fn table_commands_run() {
    for args in [
        &["tables", "pairs"][..],
        &["tables", "pairs", "--table", "holomorphic", "--algebra", "su(2,2)"],
        &["tables", "ranks", "--bound", "3"],
        &["tables", "mf"],
        &["mult", "sp2-holo", "--mu1", "4", "--mu2", "3", "--p", "8", "--q", "5"],
        &["mult", "c-count", "--a", "3", "--b", "2", "--mu1", "5", "--mu2", "4"],
        &["verify", "grading", "--algebra", "sp(2,R)", "--mu", "3,3", "--levels", "3"],
        &["verify", "upq", "--p", "2", "--q", "1", "--mu", "1,0,6", "--levels", "3"],
    ] {
        let o = mfbranch(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty(), "{args:?}");
    }
}
