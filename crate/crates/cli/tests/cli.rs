use std::process::{Command, Output};

use serde_json::Value;

fn plactic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plactic")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = plactic(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

#[test]
fn product_of_columns() {
    let (code, v) = json(&["product", "21", "2", "-n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["normal_form"], serde_json::json!(["21", "2"]));
    let (_, v) = json(&["product", "2", "21", "-n", "2"]);
    assert_eq!(v["normal_form"], serde_json::json!(["21", "2"]));
    let (_, v) = json(&["product", "3.1", "2", "-n", "3"]);
    assert_eq!(v["normal_form"], serde_json::json!(["31", "2"]));
}

#[test]
fn normal_form_of_words() {
    let (code, v) = json(&["normal-form", ""]);
    assert_eq!(code, 0);
    assert_eq!(v["tableau"], serde_json::json!([]));
    let (_, v) = json(&["normal-form", "3121"]);
    assert_eq!(v["tableau"], serde_json::json!([[1, 1], [2], [3]]));
    assert_eq!(v["normal_form"], serde_json::json!(["321", "1"]));
}

#[test]
fn vee_and_wedge() {
    let (_, v) = json(&["vee", "2", "31"]);
    assert_eq!(v["vee"], "21");
    let (_, v) = json(&["wedge", "2", "31"]);
    assert_eq!(v["wedge"], "3");
    let (_, v) = json(&["vee", "3", "21"]);
    assert_eq!(v["vee"], "321");
    assert_eq!(v["product_normal_form"], serde_json::json!(["321"]));
}

#[test]
fn ext_betti_numbers() {
    let (code, v) = json(&["ext-betti", "-n", "2", "--max", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["betti"], serde_json::json!([1, 2, 1, 0]));
    let (code, v) = json(&["ext-betti", "-n", "2", "--max", "3", "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact_confirmation"]["agrees"], true);
}

#[test]
fn verifications_that_pass() {
    for args in [
        vec!["verify-identities", "-n", "3"],
        vec!["gsb-check", "-n", "3"],
        vec!["d2-check", "-n", "2", "--max", "3"],
        vec!["hh-center", "-n", "2", "--window", "3"],
        vec!["hh-derivations", "-n", "1"],
        vec!["ext-ring", "-n", "2"],
        vec!["commutation-graph", "-n", "3"],
    ] {
        let (code, v) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["passed"], true, "{args:?}");
    }
}

#[test]
fn verifications_that_fail_exit_one() {
    let (code, v) = json(&["hh-derivations", "-n", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    let (code, v) = json(&["example15"]);
    assert_eq!(code, 1);
    let fixtures = &v["augmentations"][0]["fixtures"];
    assert_eq!(fixtures[0]["matches"], true);
    assert_eq!(fixtures[2]["matches"], false);
    assert!(v["augmentations"][1]["corrected"].as_array().unwrap().iter().all(|f| f["matches"] == true));
}

#[test]
fn chains_and_differentials() {
    let (_, v) = json(&["chains", "--degree", "1", "-n", "2"]);
    assert_eq!(v["count"], 3);
    let (_, admt) = json(&["diff", "--chain", "[21|321]", "-n", "3", "--field", "rational"]);
    let (_, closed) = json(&["diff", "--chain", "[21|321]", "-n", "3", "--field", "rational", "--closed"]);
    assert_eq!(admt["differential"], closed["differential"]);
    let (_, bi) = json(&["diff", "--chain", "1|21", "-n", "2", "--bimodule"]);
    assert_eq!(bi["mode"], "bimodule");
    let dot = plactic(&["diff", "--chain", "[1|21]", "-n", "2", "--format", "dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("digraph"));
}

#[test]
fn dot_and_text_formats() {
    let out = plactic(&["commutation-graph", "-n", "2", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.contains("\"21\" -- \"1\""));
    assert!(dot.contains("\"21\" -- \"2\""));
    let out = plactic(&["vee", "3", "21", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "321");
    assert_eq!(plactic(&["ext-betti", "--format", "dot"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["vee", "12", "3"],
        vec!["vee", "4", "3", "-n", "3"],
        vec!["normal-form", "15", "-n", "3"],
        vec!["ext-betti", "--field", "gfp:4"],
        vec!["ext-betti", "-n", "0"],
        vec!["diff", "--chain", "[1|2]", "-n", "2"],
        vec!["diff", "--chain", "[1|21]", "--closed", "--admt"],
        vec!["example15", "--eps", "1"],
        vec!["example15", "--eps", "1,2"],
        vec!["no-such-command"],
    ] {
        assert_eq!(plactic(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["ext-ring", "-n", "2"], vec!["hh-cup", "-n", "2"], vec!["d2-check", "-n", "2"], vec!["example15"]] {
        assert_eq!(plactic(&args).stdout, plactic(&args).stdout, "{args:?}");
    }
}
