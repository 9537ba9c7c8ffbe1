use std::path::PathBuf;
use std::process::Command;

use liouvred::parse_tower;
use liouvred_core::syntax::parse;
use liouvred_core::Error;
use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_liouvred")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, doc)
}

fn field<'a>(doc: &'a Value, key: &str) -> &'a str {
    doc[key].as_str().unwrap_or_else(|| panic!("missing {} in {}", key, doc))
}

#[test]
fn reduce_of_zero_is_zero() {
    let (code, doc) = run(&["reduce", "--tower", &data("log.toml"), "--expr", "0", "--h", "0"]);
    assert_eq!(code, 0);
    assert_eq!(field(&doc, "status"), "reduced");
    assert_eq!(field(&doc, "g"), "0");
    assert_eq!(field(&doc, "r"), "0");
}

#[test]
fn reduce_log_example() {
    let tw = data("log.toml");
    let (code, doc) = run(&["reduce", "--tower", &tw, "--expr", "(x*t^3+1)/(x*t)"]);
    assert_eq!(code, 0);
    let tower = parse_tower(&std::fs::read_to_string(&tw).unwrap()).unwrap();
    assert_eq!(parse(field(&doc, "g"), &tower).unwrap(), parse("x*t^2 - 2*x*t + 2*x", &tower).unwrap());
    assert_eq!(parse(field(&doc, "r"), &tower).unwrap(), parse("1/(x*t)", &tower).unwrap());
}

#[test]
fn integrate_exp_example() {
    let tw = data("exp.toml");
    let (code, doc) = run(&["integrate", "--tower", &tw, "--expr", "x/(1+e)*y"]);
    assert_eq!(code, 0);
    assert_eq!(field(&doc, "status"), "integrable");
    let tower = parse_tower(&std::fs::read_to_string(&tw).unwrap()).unwrap();
    let g = parse(field(&doc, "g"), &tower).unwrap();
    assert_eq!(g, parse("-(1 + 1/e)*y", &tower).unwrap());
}

#[test]
fn integrate_negative_answer() {
    let (code, doc) = run(&["integrate", "--tower", &data("log.toml"), "--expr", "1/(x*t)"]);
    assert_eq!(code, 1);
    assert_eq!(field(&doc, "status"), "not_integrable");
}

#[test]
fn elementary_elem2_is_rejected_with_system() {
    let expr = "((i*t2^2-i*t1^2*t2^2-2)*t3+i*t1^2*t2+3*i*t2-2*t2)/(2*(t1^2-1)*t2*(t3+t2))";
    let (code, doc) = run(&["elementary", "--tower", &data("elem2.toml"), "--expr", expr]);
    assert_eq!(code, 1);
    assert_eq!(field(&doc, "status"), "not_elementary");
    let rows = doc["system"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 4));
}

#[test]
fn elementary_success_lists_logs() {
    let (code, doc) = run(&["elementary", "--tower", &data("log.toml"), "--expr", "1/(x*t)"]);
    assert_eq!(code, 0);
    assert_eq!(field(&doc, "status"), "elementary");
    let logs = doc["logs"].as_array().unwrap();
    assert_eq!(logs.len(), 1);
    assert_eq!(logs[0]["coeff"], "1");
    assert_eq!(logs[0]["arg"], "t");
}

#[test]
fn telescope_tele_example() {
    let (code, doc) = run(&[
        "telescope",
        "--tower",
        &data("tele.toml"),
        "--shift",
        &data("tele_shift.toml"),
        "--expr",
        "t3*t4",
        "--order",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(field(&doc, "status"), "telescoper");
    let coeffs: Vec<&str> = doc["telescoper"]["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, ["-k", "k + 1"]);
    assert!(doc["telescoper"]["certificate"].is_string());
}

#[test]
fn telescope_without_dependence_is_negative() {
    let (code, doc) = run(&[
        "telescope",
        "--tower",
        &data("tele.toml"),
        "--shift",
        &data("tele_shift.toml"),
        "--expr",
        "t3*t4",
        "--order",
        "0",
    ]);
    assert_eq!(code, 1);
    assert_eq!(field(&doc, "status"), "no_telescoper");
}

#[test]
fn undecided_on_non_regular_tower() {
    let (code, doc) = run(&["reduce", "--tower", &data("dependent.toml"), "--expr", "l", "--h", "-1"]);
    assert_eq!(code, 2);
    assert_eq!(field(&doc, "status"), "undecided");
}

#[test]
fn input_errors_exit_three() {
    let (code, doc) = run(&["reduce", "--tower", &data("log.toml"), "--expr", "x+"]);
    assert_eq!(code, 3);
    assert_eq!(field(&doc, "status"), "input_error");
    assert_eq!(doc["line"], 1);
    let (code, _) = run(&["reduce", "--tower", &data("forward.toml"), "--expr", "0"]);
    assert_eq!(code, 3);
    let (code, _) = run(&["reduce", "--tower", &data("missing.toml"), "--expr", "0"]);
    assert_eq!(code, 3);
    let (code, _) = run(&["reduce", "--tower", &data("log.toml"), "--expr", "y"]);
    assert_eq!(code, 3);
    let (code, _) = run(&["reduce", "--tower", &data("log.toml")]);
    assert_eq!(code, 3);
    let (code, _) = run(&["telescope", "--tower", &data("log.toml"), "--shift", &data("tele_shift.toml"), "--expr", "x"]);
    assert_eq!(code, 3);
}

#[test]
fn latex_format_rerenders_expressions() {
    let (code, doc) = run(&["reduce", "--tower", &data("log.toml"), "--expr", "1/(x*t)", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(field(&doc, "r").contains("\\frac"));
}

#[test]
fn output_is_reparseable() {
    let tw = data("elem2.toml");
    let tower = parse_tower(&std::fs::read_to_string(&tw).unwrap()).unwrap();
    let expr = "((i*t2^2-i*t1^2*t2^2-2)*t3+i*t1^2*t2+3*i*t2-2*t2)/(2*(t1^2-1)*t2*(t3+t2))";
    let (_, doc) = run(&["reduce", "--tower", &tw, "--expr", expr]);
    let g = parse(field(&doc, "g"), &tower).unwrap();
    let r = parse(field(&doc, "r"), &tower).unwrap();
    assert_eq!(&tower.derive(&g) + &r, parse(expr, &tower).unwrap());
}

#[test]
fn tower_files_are_checked() {
    let ok = std::fs::read_to_string(data("elem2.toml")).unwrap();
    assert_eq!(parse_tower(&ok).unwrap().height(), 3);
    let fwd = std::fs::read_to_string(data("forward.toml")).unwrap();
    assert!(matches!(parse_tower(&fwd), Err(Error::Level(_))));
    let dup = "[[generators]]\nname = \"x\"\nkind = \"prim\"\ndef = \"1\"\n[[generators]]\nname = \"x\"\nkind = \"hyp\"\ndef = \"1\"\n";
    assert!(matches!(parse_tower(dup), Err(Error::Input(_))));
    let bad = "[[generators]]\nname = \"x\"\nkind = \"prim\"\ndef = \"1 +\"\n";
    assert!(matches!(parse_tower(bad), Err(Error::Parse { .. })));
    let syntax = "constants = [\n";
    assert!(matches!(parse_tower(syntax), Err(Error::Parse { line: 2, .. })));
}
