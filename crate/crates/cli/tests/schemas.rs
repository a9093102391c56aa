mod common;

use common::{s1deg, s1deg_stdin};
use serde_json::{json, Value};

fn validator(def: &str) -> jsonschema::Validator {
    let text = include_str!("../schemas/v1/s1deg.schema.json");
    let mut schema: Value = serde_json::from_str(text).unwrap();
    schema["$ref"] = json!(format!("#/$defs/{def}"));
    jsonschema::validator_for(&schema).unwrap()
}

fn check(def: &str, doc: &Value) {
    let v = validator(def);
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{def}: {errors:?}\n{doc}");
}

#[test]
fn certificates_match_schema() {
    for (set, dim) in [("0,1,3", "4"), ("0,5", "4"), ("0", "4"), ("-1,0,2", "7"), ("0,-2,6", "3")] {
        let r = s1deg(&["realize", "--set", set, "--dim", dim]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        check("certificate", &r.json());
    }
}

#[test]
fn reports_match_schema() {
    let cert = s1deg(&["realize", "--set", "0,1,3", "--dim", "4"]);
    let ok = s1deg_stdin(&["verify", "--in", "-"], Some(&cert.stdout));
    check("verifyReport", &ok.json());
    let mut bad = cert.json();
    bad["primes"][1] = json!(3);
    let rejected = s1deg_stdin(&["verify", "--in", "-"], Some(&bad.to_string()));
    assert_eq!(rejected.code, 3);
    check("verifyReport", &rejected.json());
}

#[test]
fn small_outputs_match_schema() {
    check("decomposition", &s1deg(&["decompose", "--set", "0,1,3"]).json());
    check("degreeSet", &s1deg(&["pair", "--m", "2", "--k", "3", "--preset", "thm52-dim3"]).json());
    check("degreeSet", &s1deg(&["sums", "--seq", "2,-3,5"]).json());
    check("bound", &s1deg(&["bound", "--domain-volume", "10", "--target-volume", "3"]).json());
    check("selftest", &s1deg(&["selftest", "--seed", "3"]).json());
    check("snf", &s1deg(&["snf", "--payload", r#"{"matrix":[[2,4],[6,8]]}"#]).json());
    check("group", &s1deg(&["group", "--payload", r#"{"relations":[[2,0],[0,3]]}"#]).json());
    check(
        "scalarSolutions",
        &s1deg(&[
            "solve-k",
            "--payload",
            r#"{"group":{"rank":1,"torsion":[4]},"a":{"free":[2],"torsion":[1]},"c":{"free":[6],"torsion":[3]}}"#,
        ])
        .json(),
    );
    check("vertical", &s1deg(&["dv", "--payload", r#"{"group":{"rank":1},"a":{"free":[2]},"b":{"free":[4]}}"#]).json());
    check(
        "fiberPreserving",
        &s1deg(&[
            "dfp",
            "--payload",
            r#"{"domainBase":"knot-gluing-3","targetBase":"knot-gluing-3","a":{"free":[2]},"b":{"free":[1]},"catalogue":{"maps":[{"degree":1,"action":[[1]]}],"complete":true}}"#,
        ])
        .json(),
    );
    check(
        "finiteness",
        &s1deg(&[
            "finite",
            "--payload",
            r#"{"domain":{"bundle":{"base":"knot-gluing-3","euler":{"free":[1]}}},"target":{"bundle":{"base":"knot-gluing-3","euler":{"free":[2]}}}}"#,
        ])
        .json(),
    );
}

#[test]
fn builtin_registry_matches_schema() {
    check("registry", &s1deg::registry::Registry::builtin().to_json());
}

#[test]
fn schema_rejects_malformed_documents() {
    let v = validator("certificate");
    let mut cert = s1deg(&["realize", "--set", "0,1,3", "--dim", "4"]).json();
    assert!(v.is_valid(&cert));
    cert["primes"] = json!(["five"]);
    assert!(!v.is_valid(&cert));
    assert!(!validator("degreeSet").is_valid(&json!({ "finite": [0], "extra": 1 })));
    assert!(!validator("manifold").is_valid(&json!({ "sphereProduct": 4, "sum": [] })));
}
