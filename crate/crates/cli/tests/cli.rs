use std::fs;
use std::process::{Command, Output};

use fourdl::selftest::{consequence_corpus, EXAMPLE1_DIAGRAM, EXAMPLE1_MODEL};
use fourdl::semantics::{emit_model, parse_model};
use fourdl::syntax::render;
use serde_json::Value;
use tempfile::TempDir;

fn fourdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourdl"))
        .args(args)
        .env_remove("FOURDL_MAX_STEPS")
        .env_remove("FOURDL_TIMEOUT_MS")
        .env_remove("FOURDL_MAX_WORLDS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn proves_the_k_axiom() {
    let o = fourdl(&["prove", "--formula", "[a](p->q)->([a]p->[a]q)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PROVED\n");
}

#[test]
fn diagram_of_example_1() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.4dl", EXAMPLE1_MODEL);
    let o = fourdl(&["diagram", "--model", &model]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, EXAMPLE1_DIAGRAM);
}

#[test]
fn refutation_is_confirmed_by_check() {
    let dir = TempDir::new().unwrap();
    let o = fourdl(&["prove", "--formula", "p | !p"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let model_text = out.strip_prefix("REFUTED\n").expect("verdict line");
    let m = parse_model(model_text).unwrap();
    assert_eq!(m.size(), 1);
    let path = write(&dir, "cm.4dl", model_text);
    let o = fourdl(&["check", "--model", &path, "--formula", "p | !p", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["items"][0]["global"], Value::Bool(false));
}

#[test]
fn check_reports_worlds_and_global_value() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.4dl", EXAMPLE1_MODEL);
    let o = fourdl(&["check", "--model", &model, "--formula", "@'i <a>'j"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("  w1 true\n"), "{out}");
    assert!(out.contains("  global holds\n"));
    assert!(out.ends_with("HOLDS\n"));
    let o = fourdl(&["check", "--model", &model, "--formula", "p", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["items"][0]["worlds"]["w2"], Value::Bool(true));
    assert_eq!(v["items"][0]["worlds"]["w1"], Value::Bool(false));
    assert_eq!(v["holds"], Value::Bool(false));
}

#[test]
fn assertion_files_drive_prove_and_check() {
    let dir = TempDir::new().unwrap();
    let file = write(
        &dir,
        "problem.txt",
        "# global premises\nassert: [a*]p\nassert: q\n\nquery: [a]p\n",
    );
    let o = fourdl(&["prove", "--file", &file]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let file = write(&dir, "open.txt", "assert: <a>p\ndeny: q\nquery: [a]p\n");
    let o = fourdl(&["prove", "--file", &file, "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"], "REFUTED");
    let model = write(&dir, "cm.4dl", v["countermodel"].as_str().unwrap());
    let o = fourdl(&["check", "--model", &model, "--file", &file, "--format", "json"]);
    let v = json(&o);
    let globals: Vec<(String, bool)> = v["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| (i["role"].as_str().unwrap().to_string(), i["global"].as_bool().unwrap()))
        .collect();
    assert_eq!(
        globals,
        [("assert".into(), true), ("deny".into(), false), ("query".into(), false)]
    );
}

#[test]
fn every_refuted_countermodel_passes_check() {
    let dir = TempDir::new().unwrap();
    let mut refuted = 0;
    for (k, (premises, conclusion)) in consequence_corpus(11, 25, 3).iter().enumerate() {
        let mut text = String::new();
        for p in premises {
            text.push_str(&format!("assert: {}\n", render(p)));
        }
        text.push_str(&format!("query: {}\n", render(conclusion)));
        let file = write(&dir, &format!("p{k}.txt"), &text);
        let o = fourdl(&["prove", "--file", &file, "--format", "json"]);
        if o.status.code() == Some(0) {
            continue;
        }
        assert_eq!(o.status.code(), Some(1), "{text}{}", stderr(&o));
        refuted += 1;
        let v = json(&o);
        let model = write(&dir, &format!("m{k}.4dl"), v["countermodel"].as_str().unwrap());
        let c = json(&fourdl(&["check", "--model", &model, "--file", &file, "--format", "json"]));
        for item in c["items"].as_array().unwrap() {
            let expected = item["role"] == "assert";
            assert_eq!(item["global"].as_bool(), Some(expected), "{text}: {item}");
        }
    }
    assert!(refuted > 0);
}

#[test]
fn emitted_models_round_trip() {
    let o = fourdl(&["prove", "--assume", "<a>'i", "--formula", "@'i !p", "--format", "json"]);
    let text = json(&o)["countermodel"].as_str().unwrap().to_string();
    let m = parse_model(&text).unwrap();
    assert_eq!(emit_model(&m), text);
    assert_eq!(parse_model(&emit_model(&m)).unwrap(), m);
}

#[test]
fn valid_is_prove_without_assumptions() {
    let o = fourdl(&["valid", "--formula", "p | ~p"]);
    assert_eq!(o.status.code(), Some(0));
    let o = fourdl(&["valid", "--formula", "~p -> !p"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("REFUTED\n"));
}

#[test]
fn transcript_lists_rule_applications() {
    let o = fourdl(&["valid", "--formula", "[a]p -> [a](p | q)", "--transcript"]);
    let out = stdout(&o);
    assert!(out.contains("# b0 (->-) "), "{out}");
    assert!(out.contains("closed at"));
    let o = fourdl(&["valid", "--formula", "p", "--transcript", "--format", "json"]);
    assert!(json(&o)["transcript"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn oracle_reports_bounded_search() {
    let o = fourdl(&["oracle", "--formula", "p | ~p"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "NONE-UP-TO-BOUND\n");
    let o = fourdl(&["oracle", "--formula", "!<a>p", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let m = parse_model(json(&o)["countermodel"].as_str().unwrap()).unwrap();
    assert_eq!(m.size(), 1);
    let o = fourdl(&["oracle", "--formula", "p | !p", "--samples", "5", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("COUNTERMODEL\n"));
}

#[test]
fn errors_exit_with_status_two() {
    let o = fourdl(&["prove", "--formula", "(p"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: input:"));

    let o = fourdl(&["diagram", "--model", "/nonexistent/model.4dl"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: file:"));

    let o = fourdl(&["prove", "--assume", "p"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: usage:"));

    let o = fourdl(&["prove", "--formula", "[a*]p <-> p & [a][a*]p", "--max-steps", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: resource limit:"));

    let o = fourdl(&["oracle", "--formula", "<a>p", "--max-worlds", "6", "--ceiling", "1000"]);
    assert_eq!(o.status.code(), Some(2));

    let o = fourdl(&["check", "--formula", "p"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn step_bound_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_fourdl"))
        .args(["valid", "--formula", "[a*]p <-> p & [a][a*]p"])
        .env("FOURDL_MAX_STEPS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_model_files_are_reported() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "bad.4dl", "worlds: w1\nprop p pos: w9\n");
    let o = fourdl(&["diagram", "--model", &model]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.4dl"));
}

#[test]
fn quick_selftest_passes() {
    let o = fourdl(&["selftest", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 9);
}
