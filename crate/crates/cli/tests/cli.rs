use std::process::{Command, Output};

fn starborel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starborel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[track_caller]
fn ok(args: &[&str]) -> String {
    let o = starborel(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn standard_product_of_tp_and_tq() {
    assert_eq!(ok(&["star", "--kind", "standard", "--dof", "1", "--trunc-t", "4", "--trunc-xy", "4", "t*p", "t*q"]), "t^2*p*q + t^3");
    assert_eq!(ok(&["star", "--trunc-t", "4", "--trunc-xy", "4", "t*q", "t*p"]), "t^2*p*q");
}

#[test]
fn moyal_ccr_in_two_degrees_of_freedom() {
    assert_eq!(ok(&["star", "--kind", "moyal", "--dof", "2", "p1", "q1"]), "p1*q1 + 1/2*t");
    assert_eq!(ok(&["star", "--kind", "moyal", "--dof", "2", "p1", "q2"]), "p1*q2");
}

#[test]
fn transition_and_inverse() {
    assert_eq!(ok(&["transition", "t^2*p*q"]), "t^2*p*q - 1/2*t^3");
    assert_eq!(ok(&["transition", "--inverse", "t^2*p*q - 1/2*t^3"]), "t^2*p*q");
}

#[test]
fn borel_round_trip() {
    assert_eq!(ok(&["borel", "t^3*p + 2*t"]), "1/6*xi^3*p + 2*xi");
    assert_eq!(ok(&["unborel", "1/6*xi^3*p + 2*xi"]), "t^3*p + 2*t");
}

#[test]
fn borel_star_regression() {
    assert_eq!(ok(&["borel-star", "--trunc-t", "4", "xi*p", "xi*q"]), "1/2*xi^2*p*q + 1/6*xi^3");
}

#[test]
fn hadamard_is_coefficientwise() {
    assert_eq!(ok(&["hadamard", "xi + xi^2", "xi"]), "xi");
    assert_eq!(ok(&["hadamard", "2*xi^2 + 3*xi*p", "5*xi^2 + xi*p"]), "10*xi^2 + 3*xi*p");
}

#[test]
fn odot_pairing() {
    assert_eq!(ok(&["odot", "--i", "p", "--j", "q", "p*q"]), "p*q + xi");
}

#[test]
fn polynomial_calculus() {
    assert_eq!(ok(&["resultant", "--var", "z1", "z1^2 - z2", "2*z1"]), "-4*z2");
    // (z1 - z2)^2 (z1 + 1) -> (z1 - z2)(z1 + 1)
    let simple = ok(&["simple-poly", "--var", "z1", "z1^3 - 2*z1^2*z2 + z1*z2^2 + z1^2 - 2*z1*z2 + z2^2"]);
    assert_eq!(simple, "z1^2 - z1*z2 + z1 - z2");
    assert_eq!(ok(&["simple-poly", "--var", "z1", "z2^2 + 1"]), "z2^2 + 1");
}

#[test]
fn conv_locus_membership() {
    let out = ok(&["locus", "conv", "--var", "z1", "--pbar", "z", "--point", "z=-1,z2=1", "z2*z1 + 1"]);
    assert!(out.starts_with("intersect {"), "{out}");
    assert!(out.contains("cond \"leading\": z2"), "{out}");
    assert!(out.ends_with("member=true"), "{out}");
    let out = ok(&["locus", "conv", "--var", "z1", "--pbar", "z", "--point", "z=1,z2=1", "z2*z1 + 1"]);
    assert!(out.ends_with("member=false"), "{out}");
}

#[test]
fn root_branch_locus_drops_z() {
    let args = ["locus", "conv", "--var", "z1", "--pbar", "z2", "--drop", "z", "-z1^2 + 2*z1*z2 - z1 - z2^2 + z2"];
    let out = ok(&args);
    assert!(out.contains("z2"), "{out}");
    for (z2, want) in [("0", true), ("1", true), ("2", false), ("1/2", false)] {
        let mut a = args.to_vec();
        let pt = format!("z2={z2}");
        a.insert(2, "--point");
        a.insert(3, &pt);
        assert!(ok(&a).ends_with(&format!("member={want}")), "z2 = {z2}");
    }
}

#[test]
fn hadamard_loci() {
    assert!(ok(&["locus", "hadamard1d", "--sf", "1", "--sg", "1", "--point", "xi=1"]).ends_with("member=true"));
    assert!(ok(&["locus", "hadamard1d", "--sf", "-1,2", "--sg", "1", "--point", "xi=1"]).ends_with("member=false"));
    let out = ok(&["locus", "hadamard", "--point", "xi1=1,xi2=1,xi3=0,q=0,p=0", "1 - xi - p", "1 - xi - q"]);
    assert!(out.contains("cond \"xi3\": xi3") && out.ends_with("member=true"), "{out}");
}

#[test]
fn odot_locus_contains_coordinate_sheets() {
    let out = ok(&["locus", "odot", "--i", "zi", "--j", "zj", "--point", "zi=1,zj=0,xi=3", "zi*zj - 1"]);
    assert!(out.ends_with("member=true"), "{out}");
}

#[test]
fn json_records() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["--json", "star", "--trunc-t", "4", "--trunc-xy", "4", "t*p", "t*q"])).unwrap();
    assert_eq!(v["result"], "t^2*p*q + t^3");
    assert_eq!(v["variables"], serde_json::json!(["t", "p", "q"]));
    assert_eq!(v["window"], serde_json::json!([4, 4]));
    assert_eq!(v["terms"][0]["coefficient"], "1");

    let v: serde_json::Value = serde_json::from_str(&ok(&["locus", "hadamard1d", "--sf", "1", "--sg", "2", "--point", "xi=2", "--json"])).unwrap();
    assert_eq!(v["member"], true);
    assert_eq!(v["intersect"][0][0]["poly"], "xi^2 - 2*xi");
}

#[test]
fn usage_and_parse_errors_exit_one() {
    for args in [
        vec!["star", "--bogus", "p", "q"],
        vec!["star", "p"],
        vec!["frobnicate"],
        vec!["star", "p*(q", "q"],
        vec!["star", "--kind", "weyl", "p", "q"],
        vec!["odot", "--i", "p", "--j", "p", "p*q"],
        vec!["locus", "conv", "--pbar", "z + 1", "z1 - z2"],
    ] {
        let o = starborel(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?} should explain itself");
    }
}

#[test]
fn verify_examples_passes() {
    let out = ok(&["verify", "examples"]);
    assert!(!out.contains("FAIL"), "{out}");
    assert!(out.ends_with("checks passed"), "{out}");
}

#[test]
fn verify_failure_exits_two() {
    let o = starborel(&["verify", "radius", "--points", "2", "--polylog-tol", "0.001"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL log*log"));
}

#[test]
fn integral_reps_is_deterministic_given_seed() {
    let a = ok(&["--json", "verify", "integral-reps", "--count", "4", "--seed", "7"]);
    let b = ok(&["--json", "verify", "integral-reps", "--count", "4", "--seed", "7"]);
    let strip = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        // The runtime budget line carries a wall-clock time.
        v["checks"].as_array_mut().unwrap().retain(|c| c["name"] != "runtime");
        v
    };
    assert_eq!(strip(&a), strip(&b));
}
