//! End-to-end tests of the `realforms` binary. Payloads of the reference
//! computations are pinned in `tests/golden`; set `UPDATE_GOLDEN=1` to
//! rewrite them after an intended change.

use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_realforms"));
    c.env_remove("REALFORMS_CAP");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn envelope(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout, _) = run(&full);
    (code, serde_json::from_str(&stdout).expect("JSON envelope"))
}

fn payload(args: &[&str]) -> Value {
    let (code, env) = envelope(args);
    assert_eq!(code, 0, "{args:?}: {env}");
    assert_eq!(env["status"], "ok");
    env["payload"].clone()
}

fn golden(name: &str, value: &Value) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(value).unwrap() + "\n").unwrap();
        return;
    }
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let expected: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(&expected, value, "golden file {name} differs");
}

fn stabilizer_orders(p: &Value) -> Vec<u64> {
    p["report"]["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["stabilizer_order"].as_u64().unwrap())
        .collect()
}

#[test]
fn h1_cyclic_six_inversion() {
    let p = payload(&["h1", "--group", "builtin:cyclic:6:inversion"]);
    assert_eq!(p["report"]["class_count"], 2);
    assert_eq!(stabilizer_orders(&p), vec![2, 2]);
    golden("h1-cyclic-6-inversion", &p);
}

#[test]
fn h1_involution_classes() {
    let d8 = payload(&["h1", "--group", "builtin:dihedral:8"]);
    assert_eq!(d8["report"]["class_count"], 4);
    golden("h1-dihedral-8", &d8);
    let q8 = payload(&["h1", "--group", "builtin:quaternion:8"]);
    assert_eq!(q8["report"]["class_count"], 2);
    golden("h1-quaternion-8", &q8);
}

#[test]
fn mu2_model() {
    let p = payload(&["h1", "--group", "builtin:cyclic:2"]);
    assert_eq!(stabilizer_orders(&p), vec![2, 2]);
    let r = payload(&[
        "realization-cohomology",
        "--group",
        "builtin:cyclic:2",
        "--max-degree",
        "4",
    ]);
    assert_eq!(r["dims"], json!([2, 2, 2, 2, 2]));
    golden("realization-cohomology-cyclic-2", &r);
}

#[test]
fn spin_counts() {
    let mut table = serde_json::Map::new();
    for (family, expected) in [
        ("odd", [1, 1, 3, 4, 3, 3, 5, 6]),
        ("even", [1, 1, 1, 5, 3, 3, 3, 7]),
    ] {
        let values: Vec<u64> = (1..=8)
            .map(|n| {
                payload(&["spin", family, &n.to_string()])["invariant_rank"]
                    .as_u64()
                    .unwrap()
            })
            .collect();
        assert_eq!(values, expected);
        table.insert(family.to_string(), json!(values));
    }
    golden("spin", &Value::Object(table));
    let (code, stdout, _) = run(&["spin", "even", "4"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().next(), Some("5"));
}

#[test]
fn orthogonal_forms() {
    let p = payload(&["forms", "o", "2"]);
    let sigs: Vec<Value> = p["signatures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["signature"].clone())
        .collect();
    assert_eq!(sigs, vec![json!([2, 0]), json!([1, 1]), json!([0, 2])]);
    golden("forms-o-2", &p);
    let so = payload(&["forms", "so", "2", "1"]);
    assert_eq!(so["count"], 2);
    assert_eq!(so["discriminant_extension"], true);
    let m = payload(&["forms", "match", "2", "1", "-1"]);
    assert_eq!(m["signatures"][0]["signature"], json!([0, 2]));
    assert_eq!(payload(&["witt-rank", "o", "3"])["rank"], 4);
    assert_eq!(payload(&["witt-rank", "spin-odd", "1"])["rank"], 1);
    assert_eq!(
        payload(&["witt-rank", "--group", "builtin:dihedral:8"])["rank"],
        4
    );
}

#[test]
fn witness_cases() {
    for id in ["normalizer-sl2", "o11", "orthogonal-diag"] {
        let p = payload(&["witness", "--case", id]);
        assert_eq!(p["passed"], true, "{id}");
        assert_eq!(p["failures"], 0);
        golden(&format!("witness-{id}"), &p);
    }
    let (code, env) = envelope(&["witness", "--case", "g2"]);
    assert_eq!(code, 1);
    assert_eq!(env["payload"]["kind"], "CaseNotFound");
}

#[test]
fn failing_witness_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("case.json");
    std::fs::write(
        &path,
        r#"{"id": "wrong", "title": "a false claim",
            "group": {"kind": "sl2-torus-normalizer"},
            "involution": {"mode": "conjugate"},
            "matrices": {"D": [[[2,1,0,1],[0,1,0,1]],[[0,1,0,1],[1,2,0,1]]]},
            "assertions": [{"assert": "cocycle", "g": "D", "claim": "diag(2,1/2) is a cocycle"}]}"#,
    )
    .unwrap();
    let (code, env) = envelope(&["witness", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(env["status"], "failed");
    assert_eq!(env["payload"]["assertions"][0]["passed"], false);
}

#[test]
fn cohomology_commands() {
    let p = payload(&[
        "cohomology",
        "--group",
        "builtin:cyclic:2",
        "--max-degree",
        "5",
    ]);
    assert_eq!(p["dims"], json!([1, 1, 1, 1, 1, 1]));
    let q = payload(&[
        "cohomology",
        "--group",
        "builtin:quaternion:8",
        "--max-degree",
        "4",
    ]);
    assert_eq!(q["dims"], json!([1, 2, 2, 1, 1]));
    let (code, env) = envelope(&[
        "cohomology",
        "--group",
        "builtin:cyclic:30",
        "--max-degree",
        "4",
    ]);
    assert_eq!(code, 1);
    assert_eq!(env["payload"]["kind"], "CapExceeded");
    let r = payload(&[
        "realization-cohomology",
        "--group",
        "builtin:cyclic:6:inversion",
    ]);
    assert_eq!(r["dims"], json!([2, 2, 2, 2, 2]));
}

#[test]
fn group_commands() {
    let c = payload(&["components", "--group", "builtin:quaternion:8"]);
    assert_eq!(c["component_count"], 2);
    assert_eq!(c["mass"], "1/4");
    let s = payload(&["strong-involutions", "--group", "builtin:dihedral:8"]);
    assert!(!s["report"]["groups"].as_array().unwrap().is_empty());
    let t = payload(&["twist-check", "--group", "builtin:dihedral:8"]);
    assert_eq!(t["passed"], true);
    assert_eq!(t["reports"].as_array().unwrap().len(), 6);
    let t = payload(&[
        "twist-check",
        "--group",
        "builtin:dihedral:8",
        "--base",
        "s",
    ]);
    assert_eq!(t["reports"].as_array().unwrap().len(), 1);
    // the sign character of C2 is nontrivial on both stabilizers
    let ch = payload(&[
        "character",
        "--group",
        "builtin:cyclic:2",
        "--values",
        "1,-1",
    ]);
    assert_eq!(ch["components"][0]["trivial"], false);
    let (code, env) = envelope(&[
        "character",
        "--group",
        "builtin:cyclic:3",
        "--values",
        "1,-1,1",
    ]);
    assert_eq!(code, 1);
    assert_eq!(env["payload"]["kind"], "NotACharacter");
}

#[test]
fn action_commands() {
    let dir = tempfile::tempdir().unwrap();
    let group = dir.path().join("c4.json");
    std::fs::write(
        &group,
        r#"{"kind": "table", "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]], "involution": "inversion"}"#,
    )
    .unwrap();
    let regular = dir.path().join("regular.json");
    std::fs::write(
        &regular,
        format!(
            r#"{{"group": {:?}, "points": 4,
                "action": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]],
                "sigmaX": [0,3,2,1]}}"#,
            group.to_str().unwrap()
        ),
    )
    .unwrap();
    let r = payload(&["stack", "--action", regular.to_str().unwrap()]);
    assert_eq!(r["components"].as_array().unwrap().len(), 1);
    assert_eq!(r["mass"], "1/1");

    let q = payload(&[
        "quotient",
        "--action",
        regular.to_str().unwrap(),
        "--normal",
        "0,2",
    ]);
    assert_eq!(q["comparison"]["equivalent"], true);

    let i = payload(&[
        "induce",
        "--group",
        "builtin:dihedral:8",
        "--subgroup",
        "1,r^2",
    ]);
    assert_eq!(i["comparison"]["equivalent"], true);

    let point = dir.path().join("point.json");
    std::fs::write(
        &point,
        r#"{"group": "builtin:cyclic:4:inversion", "points": 1, "action": [[0],[0],[0],[0]], "sigmaX": [0]}"#,
    )
    .unwrap();
    let cmp = payload(&[
        "compare",
        "--action",
        regular.to_str().unwrap(),
        "--other",
        point.to_str().unwrap(),
    ]);
    assert_eq!(cmp["equivalent"], false);

    let (code, env) = envelope(&[
        "quotient",
        "--action",
        point.to_str().unwrap(),
        "--normal",
        "0,2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(env["payload"]["kind"], "NotFree");
}

#[test]
fn envelope_and_determinism() {
    let args = ["h1", "--group", "builtin:dihedral:8"];
    let (_, a) = envelope(&args);
    let (_, b) = envelope(&args);
    assert_eq!(a["schema_version"], 1);
    assert_eq!(a["command"], "h1");
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(a["input_digest"], b["input_digest"]);
    assert_eq!(a["input_digest"].as_str().unwrap().len(), 64);
    let (_, c) = envelope(&["h1", "--group", "builtin:dihedral:6"]);
    assert_ne!(a["input_digest"], c["input_digest"]);
    let first = bin().args(["--json", "selftest"]).output().unwrap();
    let second = bin().args(["--json", "selftest"]).output().unwrap();
    let p1: Value = serde_json::from_slice(&first.stdout).unwrap();
    let p2: Value = serde_json::from_slice(&second.stdout).unwrap();
    assert_eq!(
        serde_json::to_string(&p1["payload"]).unwrap(),
        serde_json::to_string(&p2["payload"]).unwrap()
    );
}

#[test]
fn exit_codes_and_caps() {
    let (code, _, stderr) = run(&["h1", "--grup", "builtin:cyclic:2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--grup"));
    let (code, _, _) = run(&["forms", "o"]);
    assert_eq!(code, 2);
    let (code, _, stderr) = run(&["h1", "--group", "builtin:dihedral:7"]);
    assert_eq!(code, 1);
    assert!(stderr.starts_with("error[InvalidInput]"));

    let (code, env) = envelope(&["--cap", "4", "h1", "--group", "builtin:dihedral:8"]);
    assert_eq!(code, 1);
    assert_eq!(env["payload"]["kind"], "OrderCapExceeded");
    let out = bin()
        .env("REALFORMS_CAP", "4")
        .args(["--json", "h1", "--group", "builtin:dihedral:8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let env: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(env["payload"]["kind"], "OrderCapExceeded");
}

#[test]
fn selftest_passes() {
    let (code, stdout, _) = run(&["selftest"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(!stdout.contains("FAIL"));
}
