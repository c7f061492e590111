use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn lrc(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lrc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bounds_for_small_tuple() {
    let v = json(&lrc(&["bounds", "--n", "7", "--k", "4", "--r", "2", "--delta", "2"], None));
    assert_eq!(v["singleton"], 3);
    assert_eq!(v["new_lower"], 2);
    assert_eq!(v["old_lower"], 2);
    assert_eq!(v["achievable"]["verdict"], "unknown");
}

#[test]
fn shared_core_piped_into_analyze() {
    let built = lrc(
        &["construct", "shared-core", "--n", "10", "--k", "5", "--r", "3", "--delta", "2"],
        None,
    );
    assert!(built.status.success());
    let doc = String::from_utf8(built.stdout).unwrap();
    let v = json(&lrc(&["analyze", "-", "--r", "3", "--delta", "2"], Some(&doc)));
    assert_eq!(v["d"], 5);
    assert_eq!(v["locality"]["achieves"], true);
    assert_eq!(v["locality"]["singleton"], 5);
}

#[test]
fn improved_bound_instance_is_not_optimal() {
    let built = lrc(
        &["construct", "improved-bound", "--n", "7", "--k", "4", "--r", "2", "--delta", "2"],
        None,
    );
    let doc = String::from_utf8(built.stdout).unwrap();
    let v = json(&lrc(&["analyze", "-", "--r", "2", "--delta", "2"], Some(&doc)));
    assert_eq!(v["d"], 2);
    assert_eq!(v["locality"]["achieves"], false);
    let checks = v["locality"]["structure"]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["passed"] == false));
}

#[test]
fn atoms_document_builds() {
    let atoms = r#"{"n":6,"k":4,"atoms":[{"set":[0,1,2],"rank":2},{"set":[3,4,5],"rank":2}]}"#;
    let built = lrc(&["construct", "atoms", "-", "--restricted"], Some(atoms));
    let doc = String::from_utf8(built.stdout).unwrap();
    let v = json(&lrc(&["analyze", "-"], Some(&doc)));
    assert_eq!((v["n"].as_u64(), v["k"].as_u64(), v["d"].as_u64()), (Some(6), Some(4), Some(2)));
}

#[test]
fn oracle_verify_agrees() {
    let doc = String::from_utf8(lrc(&["construct", "uniform", "--n", "5", "--k", "3"], None).stdout).unwrap();
    let path = std::env::temp_dir().join(format!("lrc-cli-{}.json", std::process::id()));
    std::fs::write(&path, doc).unwrap();
    let v = json(&lrc(&["oracle", "verify", path.to_str().unwrap(), "--r", "3", "--delta", "3"], None));
    std::fs::remove_file(&path).ok();
    assert!(v.as_array().unwrap().iter().all(|x| x["agrees"] == true));
}

#[test]
fn simulation_is_reproducible() {
    let doc = String::from_utf8(
        lrc(&["construct", "shared-core", "--n", "10", "--k", "5", "--r", "3", "--delta", "2"], None).stdout,
    )
    .unwrap();
    let args = ["simulate", "-", "--r", "3", "--delta", "2", "--p", "0.2", "--trials", "500", "--seed", "9"];
    let a = lrc(&args, Some(&doc));
    let b = lrc(&args, Some(&doc));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let unseeded = lrc(&args[..args.len() - 2], Some(&doc));
    assert_eq!(unseeded.status.code(), Some(1));
}

#[test]
fn sweep_csv_header_and_row() {
    let out = lrc(&["sweep", "--nmax", "7"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,k,r,delta,singleton,old,new,verdict"));
    assert!(text.lines().any(|l| l == "7,4,2,2,3,2,2,unknown"));
}

#[test]
fn code_induce_round_trip() {
    let code = r#"{"s":2,"n":3,"codewords":[[0,0,0],[0,1,1],[1,0,1],[1,1,0]]}"#;
    let m = lrc(&["code", "induce", "-"], Some(code));
    let doc = String::from_utf8(m.stdout).unwrap();
    let v = json(&lrc(&["analyze", "-"], Some(&doc)));
    assert_eq!(v["d"], 2);
    let d = json(&lrc(&["code", "distance", "-"], Some(code)));
    assert_eq!(d["d"], 2);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = lrc(&["bounds", "--n", "7", "--bogus"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_error_names_the_field() {
    let bad = r#"{"n":4,"repr":"cyclic_flats","data":[{"set":[],"rank":0},{"set":[0,1,2,3],"rank":"two"}]}"#;
    let out = lrc(&["analyze", "-"], Some(bad));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("data[1].rank"), "{err}");
}

#[test]
fn version_names_schema() {
    let out = lrc(&["--version"], None);
    assert!(String::from_utf8(out.stdout).unwrap().contains("schema 1"));
}

#[test]
fn shipped_schemas_parse() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas");
    for name in ["matroid", "code", "graph", "atoms"] {
        let text = std::fs::read_to_string(dir.join(format!("{name}.schema.json"))).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["type"], "object", "{name}");
    }
}
