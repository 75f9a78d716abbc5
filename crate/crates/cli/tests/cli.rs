use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn charlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charlab"))
        .args(args)
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn temp(name: &str, contents: &Value) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents.to_string()).unwrap();
    p
}

fn s3_over_a3() -> Value {
    json!({
        "kind": "THM_1_3",
        "ambient": "S(3)",
        "subgroups": { "A": "genlist([1,2])", "G": "genlist([3])", "N": "genlist([])" },
        "characters": { "theta": { "on": "N", "row": 0, "degree": 1, "det_order": 1 } }
    })
}

#[test]
fn counterexample_reproduces() {
    let o = charlab(&["verify", "--kinds", "COUNTEREXAMPLE_1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rep = stdout_json(&o);
    let inst = &rep["instances"][0];
    assert_eq!(rep["instances"].as_array().unwrap().len(), 1);
    assert_eq!((inst["lhs"].as_i64(), inst["rhs"].as_i64()), (Some(0), Some(2)));
    assert_eq!(inst["verdict"], "pass");
}

#[test]
fn chartab_of_c2() {
    let o = charlab(&["chartab", "C(2)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["rows"], json!([["1", "1"], ["1", "-1"]]));
    let md = charlab(&["chartab", "S(3)", "--format", "markdown"]);
    assert_eq!(code(&md), 0);
    assert!(String::from_utf8(md.stdout).unwrap().contains('|'));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&charlab(&["chartab", "Z(3)"])), 3);
    assert_eq!(code(&charlab(&["chartab", "C(2) x"])), 3);
    assert_eq!(code(&charlab(&["chartab"])), 2);
    assert_eq!(code(&charlab(&["verify", "--kinds", "NOPE"])), 5);
    let g = charlab(&["goodness", "S(3)", "--normal", "genlist([])", "--char", "5"]);
    assert_eq!(code(&g), 4);

    let mut bad = s3_over_a3();
    bad["subgroups"]["N"] = json!("genlist([1])");
    let suite = temp("hyp.json", &json!({ "instances": [bad] }));
    let o = charlab(&["verify", "--suite", suite.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert_eq!(stdout_json(&o)["instances"][0]["error_class"], "hypothesis");

    let mut parse = s3_over_a3();
    parse["ambient"] = json!("S(3) wr");
    let suite = temp("parse.json", &json!({ "instances": [parse, bad] }));
    assert_eq!(code(&charlab(&["verify", "--suite", suite.to_str().unwrap()])), 3);
}

#[test]
fn literal_count_failure_is_reported() {
    let suite = temp("s3.json", &json!({ "name": "s3", "instances": [s3_over_a3()] }));
    let path = suite.to_str().unwrap();
    let o = charlab(&["verify", "--suite", path]);
    assert_eq!(code(&o), 1);
    let inst = &stdout_json(&o)["instances"][0];
    assert_eq!((inst["lhs"].as_i64(), inst["rhs"].as_i64()), (Some(1), Some(3)));
    assert_eq!(inst["witnesses"]["irr_a_orbits"], inst["witnesses"]["good_a_orbits"]);
    assert!(inst["note"].as_str().unwrap().contains("orbit counts"));
    let plain = charlab(&["verify", "--suite", path, "--plain-failures"]);
    assert!(stdout_json(&plain)["instances"][0].get("note").is_none());
}

#[test]
fn goodness_certificates() {
    let o = charlab(&["goodness", "Q(8)", "--normal", "center", "--char", "1"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["good_elements"], 2);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 8);
}

#[test]
fn mine_then_verify_is_deterministic() {
    let o = charlab(&["mine", "--kind", "THM_3_1", "--max-per-kind", "20"]);
    assert_eq!(code(&o), 0);
    let specs = stdout_json(&o);
    assert_eq!(specs.as_array().unwrap().len(), 20);
    let suite = temp("mined.json", &json!({ "instances": specs }));
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for (out, jobs) in [(&a, "1"), (&b, "2")] {
        let o = charlab(&[
            "verify",
            "--suite",
            suite.to_str().unwrap(),
            "--jobs",
            jobs,
            "--report",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
