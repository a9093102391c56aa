mod common;

use common::{realize_and_verify, s1deg, s1deg_stdin};
use serde_json::{json, Value};

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{GOLDEN}/{name}")).unwrap()
}

fn golden_json(name: &str) -> Value {
    serde_json::from_str(&golden(name)).unwrap()
}

#[test]
fn realize_worked_example_matches_golden() {
    let r = s1deg(&["realize", "--set", "0,1,3", "--dim", "4", "--pretty"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, golden("realize_0_1_3_dim4.json"));
    let t = s1deg(&["realize", "--set", "0,1,3", "--dim", "4", "--format", "text"]);
    assert_eq!(t.stdout, golden("realize_0_1_3_dim4.txt"));
}

#[test]
fn tampered_prime_is_rejected_with_locator() {
    let path = format!("{GOLDEN}/tampered_prime.json");
    let r = s1deg(&["verify", "--in", &path, "--pretty"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.stdout, golden("verify_tampered.json"));
    let report = r.json();
    assert_eq!(report["failures"][0]["check"], "prime-too-small");
    assert_eq!(report["failures"][0]["locator"], "primes[1]");
}

#[test]
fn pair_with_coprime_multipliers_is_zero_only() {
    let r = s1deg(&["pair", "--m", "2", "--k", "3", "--preset", "thm52-dim3"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, golden("pair_2_3.json"));
}

#[test]
fn realize_then_verify_round_trips() {
    for (set, dim) in [("0,1,3", 4), ("0,-7", 3), ("0", 5), ("-3,0,1,2", 4), ("0,2,5", 8)] {
        let (r, v) = realize_and_verify(set, dim);
        assert_eq!(r.code, 0, "{set} in {dim}: {}", r.stderr);
        assert_eq!(v.code, 0, "{set} in {dim}: {}", v.stdout);
        assert_eq!(v.json(), json!({ "valid": true, "failures": [] }));
    }
}

#[test]
fn output_file_holds_the_certificate() {
    let dir = std::env::temp_dir().join(format!("s1deg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    let p = path.to_str().unwrap();
    let r = s1deg(&["realize", "--set", "0,1,3", "--dim", "4", "--out", p]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let v = s1deg(&["verify", "--in", p]);
    assert_eq!(v.code, 0, "{}", v.stdout);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn malformed_input_reports_pointer() {
    let r = s1deg_stdin(&["snf", "--in", "-"], Some(r#"{"matrix":[[1,2],[3,"x"]]}"#));
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("/matrix/1/1"), "{}", r.stderr);
    let r = s1deg_stdin(&["verify", "--in", "-"], Some("{bad"));
    assert_eq!(r.code, 1);
    let mut cert = golden_json("tampered_prime.json");
    cert["pairs"][0]["summands"][1]["beta"] = json!("three");
    let r = s1deg_stdin(&["verify", "--in", "-"], Some(&cert.to_string()));
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("/pairs/0/summands/1/beta"), "{}", r.stderr);
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(s1deg(&["realize", "--set", "1,2", "--dim", "4"]).code, 1);
    assert_eq!(s1deg(&["realize", "--set", "0,1", "--dim", "5", "--preset", "knot-gluing-3"]).code, 1);
    assert_eq!(s1deg(&["pair", "--m", "0", "--k", "3"]).code, 1);
    assert_eq!(s1deg(&["bogus"]).code, 1);
    assert_eq!(s1deg(&["realize", "--set", "0,1", "--dim", "4", "--preset", "no-such-base"]).code, 1);
}

#[test]
fn exhausted_caps_exit_two() {
    let r = s1deg(&["realize", "--set", "0,1,3,7,12,20", "--dim", "4", "--budget", "5"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("budget"), "{}", r.stderr);
    let r = s1deg(&["decompose", "--set", "0,1,3,7,12,20", "--max-len", "1"]);
    assert_eq!(r.code, 2, "{}", r.stderr);
}

#[test]
fn stabilize_raises_dimension() {
    let cert = s1deg(&["realize", "--set", "0,1,3", "--dim", "4"]);
    let r = s1deg_stdin(&["stabilize", "--dim", "9", "--in", "-"], Some(&cert.stdout));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let c = r.json();
    assert_eq!(c["dimension"], 9);
    assert_eq!(c["stabilization"]["shift"], 5);
    assert_eq!(s1deg_stdin(&["verify", "--in", "-"], Some(&r.stdout)).code, 0);
    let low = s1deg_stdin(&["stabilize", "--dim", "6", "--in", "-"], Some(&cert.stdout));
    assert_eq!(low.code, 1);
}

#[test]
fn registry_file_adds_bases() {
    let dir = std::env::temp_dir().join(format!("s1deg-reg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("presets.json");
    let reg = json!({ "schemaVersion": 1, "bases": [{
        "name": "custom-3", "dim": 3, "h2": { "rank": 1 },
        "classes": { "c": { "free": [1] } },
        "flags": ["aspherical", "scf_pi1", "d_self_is_01", "d_self_finite", "fixes_class:c"]
    }]});
    std::fs::write(&path, reg.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let r = s1deg(&["--registry", p, "realize", "--set", "0,2", "--dim", "4", "--preset", "custom-3", "--class", "c"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["finalSet"], json!({ "finite": [0, 2] }));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn selftest_passes() {
    let r = s1deg(&["selftest", "--seed", "11"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json()["passed"], true);
}
