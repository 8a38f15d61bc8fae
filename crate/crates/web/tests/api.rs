use serde_json::Value;
use twistcode_web::{app_report, character_table, weil_parameters};

fn fixture(rel: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn golden_table_loads() {
    let v = parse(character_table(&fixture("ctbl/s3.ctbl"), true));
    assert_eq!(v["group"], "S3");
    assert_eq!(v["characters"][2]["values"], serde_json::json!(["2", "0", "-1"]));
}

#[test]
fn sigma72_has_one_code() {
    let v = parse(app_report(&fixture("matrep/Sigma72phi.matrep"), 24));
    let labels: Vec<&str> = v["codes"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert_eq!(labels, vec!["((3,2,2))_3"]);
}

#[test]
fn binary_icosahedral_from_permutations() {
    let v = parse(app_report(&fixture("permgroup/2I.perm"), 24));
    let mut labels: Vec<&str> = v["codes"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    labels.sort();
    assert_eq!(labels, vec!["((6,3,2))_2", "((7,2,2))_2"]);
}

#[test]
fn malformed_input_is_an_error_object() {
    assert!(parse(character_table("hello", true))["error"].is_string());
    assert!(parse(app_report("CTBL v1\n", 24))["error"].is_string());
    assert!(parse(weil_parameters("su", 0))["error"].is_string());
}
