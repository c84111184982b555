use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

fn vickset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vickset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = vickset(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    vickset(args).status.code().unwrap()
}

#[test]
fn eval_examples() {
    assert_eq!(ok(&["eval", "-e", "{(0,10),(1,11),(1,12)} ,, 0"]), "10\n");
    assert_eq!(ok(&["eval", data("single_paste.expr").to_str().unwrap()]), "13\n");
    assert_eq!(ok(&["eval", data("value_command.expr").to_str().unwrap()]), "10\n");
    assert_eq!(ok(&["eval", "-e", "{} outside {1}"]), "[\"set\"]\n");
    assert_eq!(
        ok(&["eval", "--pretty", data("quotient.expr").to_str().unwrap()]),
        "{({0, 1}, {10}), ({2}, {20})}\n"
    );
}

#[test]
fn combinatorial_goldens() {
    for name in ["worked_example", "rational_bids"] {
        let input = data(&format!("{name}.json"));
        let out = ok(&["run-combinatorial", input.to_str().unwrap()]);
        assert_eq!(out, golden(&format!("{name}.outcome")), "{name}");
    }
}

#[test]
fn combinatorial_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("outcome.json");
    let input = data("worked_example.json");
    let stdout = ok(&[
        "run-combinatorial",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap(), golden("worked_example.outcome"));
}

#[test]
fn enumerate_goldens() {
    assert_eq!(ok(&["enumerate", "partitions", "1,2,3"]), golden("partitions_123.golden"));
    assert_eq!(
        ok(&["enumerate", "injections", "1,2", "a,b,c"]),
        golden("injections_12_abc.golden")
    );
    let listed = ok(&["enumerate", "partitions", "1,2,3,4,5"]);
    let oracle = ok(&["enumerate", "partitions", "1,2,3,4,5", "--oracle"]);
    assert_eq!(listed.lines().count(), 52);
    let mut a: Vec<_> = listed.lines().collect();
    let mut b: Vec<_> = oracle.lines().collect();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
}

#[test]
fn single_good_report() {
    let out = ok(&["run-single", "--bidders", "1,2,3", "--grid", "0,1/2,1", "--bidder", "2"]);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["dom4_violation"], serde_json::Value::Null);
    assert_eq!(j["genvick"], "holds");
    assert_eq!(j["reducedprice_runiq"], true);
    let out = ok(&["run-single", "--bidders", "1,2", "--grid", "0,1,2", "--bidder", "2", "--rule", "first"]);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(j["dom4_violation"].is_object());
}

#[test]
fn check_laws_records() {
    let out = ok(&["check-laws", "--law", "runiq_equivs"]);
    let j: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(j["cases"], 64);
    assert_eq!(j["verdict"], "pass");
    assert!(j.get("elapsed_ms").is_none());
    let timed = ok(&["check-laws", "--law", "runiq_equivs", "--timings"]);
    assert!(timed.contains("elapsed_ms"));

    let out = ok(&["check-laws", "--law", "l23_necessity"]);
    let j: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(j["verdict"], "fail");
    assert_eq!(j["conforms"], true);
    assert!(j["counterexample"].is_array());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let out = ok(&["check-laws", "--law", "lll34", "--seed", "9", "--report", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(path).unwrap(), out);
}

#[test]
fn check_laws_is_deterministic() {
    let args = ["check-laws", "--profile", "quick", "--seed", "5"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    assert_eq!(a.lines().count(), vickset_core::laws::registry().len());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["eval", "-e", "{(0,1)"]), 1);
    assert_eq!(code(&["eval", "-e", "{1} ,, 1"]), 2);
    assert_eq!(code(&["eval", "/nonexistent/expr"]), 2);
    assert_eq!(code(&["check-laws", "--profile", "medium"]), 2);
    assert_eq!(code(&["check-laws", "--law", "no_such_law"]), 2);
    assert_eq!(code(&["check-laws", "--law", "lll53", "--universe", "3x3"]), 3);
    assert_eq!(code(&["enumerate", "partitions", "1,2,3,4,5,6,7", "--oracle"]), 3);
    assert_eq!(code(&["enumerate", "partitions", "1,,2"]), 1);
    assert_eq!(code(&["run-single", "--bidders", "1,2,3,4", "--grid", "0", "--bidder", "1"]), 3);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn bad_instance_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let parse = write("parse.json", r#"{"goods": ["g"], "bidders": [1],"#);
    assert_eq!(code(&["run-combinatorial", parse.to_str().unwrap()]), 1);
    let invalid = write("invalid.json", r#"{"goods": ["g"], "bidders": [1], "valuations": [[2, ["set", "g"], 1]]}"#);
    assert_eq!(code(&["run-combinatorial", invalid.to_str().unwrap()]), 2);
    let caps = write("caps.json", r#"{"goods": [1,2,3,4,5,6,7], "bidders": [1]}"#);
    assert_eq!(code(&["run-combinatorial", caps.to_str().unwrap()]), 3);
}
