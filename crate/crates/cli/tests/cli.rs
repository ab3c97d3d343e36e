use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fieldalg")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

#[test]
fn conformal_checks_pass_on_virasoro() {
    let o = run(&["check", "conformal", &fixture("virasoro.alg")]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn corrupted_bracket_fails_jacobi_with_witness() {
    let o = run(&["--report", "json", "check", "conformal", &fixture("corrupted-virasoro.alg"), "--identities", "jacobi"]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["checks"][0]["identity"], "jacobi");
    assert!(r["checks"][0]["witness"]["inputs"]["a"] == "L");
}

#[test]
fn undeclared_symbol_is_a_parse_error_with_position() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join("undeclared.alg");
    std::fs::write(&p, "kind = conformal\ngenerator a weight 1\nbracket a a = lam*M\n").unwrap();
    let o = run(&["check", "conformal", p.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(":3:19: unknown symbol `M`"), "{err}");
}

#[test]
fn usage_errors_exit_3_and_help_exits_0() {
    assert_eq!(code(&run(&["--bogus"])), 3);
    assert_eq!(code(&run(&["check", "axiom", &fixture("ut2.alg"), "--kind", "nonsense"])), 3);
    assert_eq!(code(&run(&["check", "axiom", &fixture("ut2.alg"), "--kind", "lr", "--n-range", "3..1"])), 3);
    assert_eq!(code(&run(&["smash", &fixture("ut2.alg"), "--group", &fixture("mat2.alg")])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn boson_envelope_verifies_as_vertex() {
    let o = run(&["--report", "json", "build", "envelope", &fixture("boson.alg"), "--weight-cutoff", "3", "--central", "K=1", "--verify"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["data"]["classification"], "vertex");
    assert_eq!(r["data"]["sfc"]["graded_dimensions"], serde_json::json!([[0, 1], [1, 1], [2, 2], [3, 3]]));
}

#[test]
fn corrupted_build_fails_borcherds_and_the_witness_replays() {
    let o = run(&["--report", "json", "check", "axiom", &fixture("corrupted-build.json"), "--kind", "borcherds", "--n-range", "-1..1"]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    let w = &r["checks"][0]["witness"];
    assert!(w.is_object());
    assert_ne!(w["lhs"], w["rhs"]);

    let saved = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("borcherds-witness.json");
    std::fs::write(&saved, &o.stdout).unwrap();
    let again = run(&["--report", "json", "--replay", saved.to_str().unwrap()]);
    assert_eq!(code(&again), 0, "{}", String::from_utf8_lossy(&again.stdout));
    assert_eq!(json(&again)["checks"][0]["identity"], "replay:borcherds");
}

#[test]
fn a_tampered_witness_does_not_replay() {
    let o = run(&["--report", "json", "check", "axiom", &fixture("corrupted-build.json"), "--kind", "borcherds", "--n-range", "-1..1"]);
    let mut r = json(&o);
    r["checks"][0]["witness"]["rhs"] = Value::String("0".into());
    let saved = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("tampered-witness.json");
    std::fs::write(&saved, serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(code(&run(&["replay", saved.to_str().unwrap()])), 1);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let args = |t: &'static str| {
        ["--report", "json", "--threads", t, "smash", "BOSON", "--group", "GROUP", "--weight-cutoff", "3", "--central", "K=1"]
    };
    let (b, g) = (fixture("boson.alg"), fixture("z2-flip.alg"));
    let with = |t| {
        let a: Vec<&str> = args(t).iter().map(|x| if *x == "BOSON" { b.as_str() } else if *x == "GROUP" { g.as_str() } else { x }).collect();
        let mut r = json(&run(&a));
        r["command"] = Value::Null;
        r
    };
    let one = with("1");
    assert_eq!(one, with("8"));
    assert_eq!(one["data"]["level"], "field");
    assert_eq!(one["data"]["invariant_dimensions"], serde_json::json!([[0, 1], [1, 0], [2, 1], [3, 1]]));
}

#[test]
fn classify_reports_the_level() {
    let r = json(&run(&["--report", "json", "classify", &fixture("ut2.alg")]));
    assert_eq!(r["data"]["level"], "strong-field");
    assert_eq!(r["verdict"], "pass");
}

#[test]
fn zhu_of_boson_tensor_mat2_is_the_tensor_product() {
    let o = run(&[
        "--report",
        "json",
        "zhu",
        &fixture("boson.alg"),
        "--weight-cutoff",
        "4",
        "--central",
        "K=1",
        "--tensor-with",
        &fixture("mat2.alg"),
    ]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["data"]["dimension"], 20);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["identity"] == "zhu-tensor-isomorphism" && c["verdict"] == "pass"));
}

#[test]
fn self_module_of_an_envelope() {
    let o = run(&["module", &fixture("boson.alg"), "--self-module", "--weight-cutoff", "2", "--central", "K=1"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("module-nth-product: Pass"));
}

#[test]
fn saved_tensor_build_round_trips() {
    let saved = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("tensor-build.json");
    let o = run(&[
        "build",
        "tensor",
        &fixture("virasoro.alg"),
        "--tensor-degree",
        "2",
        "--t-degree",
        "2",
        "--order",
        "4",
        "--save",
        saved.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let r = json(&run(&["--report", "json", "check", "axiom", saved.to_str().unwrap(), "--kind", "associativity", "--max-weight", "2"]));
    assert_eq!(r["input"]["kind"], "tensor");
    assert_eq!(r["input"]["degree"], 2);
}
