use std::process::{Command, Output};

use korenblum_core::radial::{radial_profile, RadialProfile, Weight};
use korenblum_core::{catalog, RadialGrid};
use num_complex::Complex64;
use serde_json::Value;

fn korenblum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_korenblum")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(stdout(out).trim()).unwrap()
}

#[test]
fn norm_examples() {
    let v = json(&korenblum(&["norm", "--fn", "pow_witness:1", "--space", "korenblum:1"]));
    assert!((v["estimate"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["grid"]["depth"], 12);
    let v = json(&korenblum(&["norm", "--fn", "g0", "--space", "bloch"]));
    assert!((v["estimate"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let v = json(&korenblum(&["norm", "--fn", "const:0", "--space", "korenblum:2"]));
    assert_eq!(v["estimate"].as_f64(), Some(0.0));
}

#[test]
fn optimal_domain_norm_of_constant_for_identity_symbol() {
    // V_z 1 = z and max (1 - r) r = 1/4; the proxy is max (1 - r)^2 = 1
    for (method, want) in [("path", 0.25), ("proxy", 1.0)] {
        let v = json(&korenblum(&["norm", "--fn", "const:1", "--space", "odomain:1:monomial:1", "--method", method]));
        assert!((v["estimate"].as_f64().unwrap() - want).abs() < 1e-12, "{method}: {v}");
    }
}

#[test]
fn classify_examples() {
    let label = |f: &str| json(&korenblum(&["classify", "--fn", f, "--gamma", "1"]))["membership"].clone();
    assert_eq!(label("pow_witness:1"), "InA_NotA0");
    assert_eq!(label("const:1"), "InA0");
    assert_eq!(label("pow_witness:1.5"), "NotInA");
}

#[test]
fn classify_optimal_domain_variants() {
    let run = |variant: &str| {
        json(&korenblum(&["classify", "--fn", "pow_witness:2", "--gamma", "1", "--symbol", "monomial:1", "--variant", variant]))
    };
    let full = run("full");
    assert_eq!(full["membership"], "InA_NotA0");
    assert_eq!(full["member"], true);
    assert_eq!(full["order"], 2);
    assert_eq!(run("little-oh")["member"], false);
}

#[test]
fn apply_examples() {
    assert_eq!(stdout(&korenblum(&["apply", "--op", "cesaro", "--fn", "series:[0,2,-2]"])).trim(), "[0,1,0]");
    assert_eq!(stdout(&korenblum(&["apply", "--op", "integrate", "--fn", "series:[3]"])).trim(), "[0,3]");
    let out = korenblum(&["apply", "--op", "backshift", "--fn", "series:[1,2]"]);
    assert_eq!(out.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&out.stderr).contains("f(0)"));
    assert_eq!(stdout(&korenblum(&["apply", "--op", "volterra:monomial:1", "--fn", "series:[1]"])).trim(), "[0,1]");
    assert_eq!(stdout(&korenblum(&["apply", "--op", "averaged:monomial:1", "--fn", "series:[1]"])).trim(), "[1]");
    assert_eq!(stdout(&korenblum(&["apply", "--op", "backshift", "--fn", "series:[0,1]"])).trim(), "[1]");
}

#[test]
fn apply_at_a_point_uses_closed_forms() {
    let v = json(&korenblum(&["apply", "--op", "volterra:g0", "--fn", "const:1", "--at", "0.5"]));
    assert!((v["re"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-12);
    // C(1) = -Log(1 - z)/z
    let z = Complex64::new(0.3, 0.4);
    let want = -(Complex64::new(1.0, 0.0) - z).ln() / z;
    let v = json(&korenblum(&["apply", "--op", "cesaro", "--fn", "const:1", "--at", "0.3+0.4i"]));
    assert!((v["re"].as_f64().unwrap() - want.re).abs() < 1e-12);
    assert!((v["im"].as_f64().unwrap() - want.im).abs() < 1e-12);
    assert_eq!(korenblum(&["apply", "--op", "shift", "--fn", "g0", "--at", "1"]).status.code(), Some(65));
}

#[test]
fn averaged_origin_values_are_both_reported() {
    let out = korenblum(&["apply", "--op", "averaged:monomial:2", "--fn", "series:[1,1]"]);
    assert_eq!(stdout(&out).trim(), "[0,1,0.6666666666666666]");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("analytic limit") && err.contains("convention"), "{err}");
}

#[test]
fn profile_examples() {
    let out = korenblum(&["profile", "--fn", "e1_witness:1", "--gamma", "1", "--ray", "pi"]);
    let p = RadialProfile::from_csv(&stdout(&out), Weight::power(1.0).unwrap()).unwrap();
    for (pt, w) in p.points.iter().zip(p.weighted()) {
        let want = (1.0 + pt.r) / (1.0 - pt.r);
        assert!((w - want).abs() <= 1e-9 * want, "r = {}: {w} vs {want}", pt.r);
    }
    let out = korenblum(&["profile", "--fn", "const:1", "--gamma", "1"]);
    let p = RadialProfile::from_csv(&stdout(&out), Weight::power(1.0).unwrap()).unwrap();
    for (pt, w) in p.points.iter().zip(p.weighted()) {
        assert_eq!(w, 1.0 - pt.r);
    }
    let out = korenblum(&["profile", "--fn", "pow_witness:1", "--gamma", "1", "--ray", "0"]);
    let p = RadialProfile::from_csv(&stdout(&out), Weight::power(1.0).unwrap()).unwrap();
    assert!(p.weighted().iter().all(|w| (w - 1.0).abs() < 1e-12));
}

#[test]
fn profile_csv_round_trips_exactly() {
    let out = korenblum(&["profile", "--fn", "e1_witness:0.5", "--gamma", "0.5"]);
    let parsed = RadialProfile::from_csv(&stdout(&out), Weight::power(0.5).unwrap()).unwrap();
    let f = catalog("e1_witness", &[Complex64::new(0.5, 0.0)]).unwrap();
    let direct = radial_profile(&f, Weight::power(0.5).unwrap(), &RadialGrid::default()).unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["verify", "check_shift_identities", "check_pugu_equivalence", "--format", "json", "--seed", "5"];
    let a = korenblum(&args);
    let b = korenblum(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("runtime"));
    let timed = korenblum(&["verify", "check_cesaro_inverse", "--format", "json", "--timings"]);
    assert!(stdout(&timed).contains("runtime_ms"));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    let out = korenblum(&["profile", "--fn", "g0", "--gamma", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("r,maxmod,weighted\n"));
}

#[test]
fn config_file_is_merged_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"depth": 8, "angles": 64, "format": "table"}"#).unwrap();
    let cfg = path.to_str().unwrap();
    let out = korenblum(&["norm", "--fn", "g0", "--space", "bloch", "--config", cfg]);
    assert!(stdout(&out).contains("depth 8 angles 64"));
    let v = json(&korenblum(&["norm", "--fn", "g0", "--space", "bloch", "--config", cfg, "--grid-depth", "10", "--format", "json"]));
    assert_eq!(v["grid"]["depth"], 10);
    assert_eq!(v["grid"]["angles"], 64);
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(korenblum(&["norm", "--fn", "g0", "--space", "bloch", "--config", cfg]).status.code(), Some(64));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(korenblum(&["verify", "check_cesaro_inverse"]).status.code(), Some(0));
    assert_eq!(korenblum(&["verify", "no_such_check"]).status.code(), Some(64));
    // a single diagnostic is inconclusive but never counted
    assert_eq!(korenblum(&["verify", "e1_littleoh_diagnostic"]).status.code(), Some(0));
    let out = korenblum(&["verify", "check_example_E1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn parse_errors_exit_64() {
    assert_eq!(korenblum(&["norm", "--fn", "series:[1,", "--space", "bloch"]).status.code(), Some(64));
    assert_eq!(korenblum(&["norm", "--fn", "g0", "--space", "hardy"]).status.code(), Some(64));
    assert_eq!(korenblum(&["apply", "--op", "transpose", "--fn", "g0"]).status.code(), Some(64));
    assert_eq!(korenblum(&["profile", "--fn", "g0", "--gamma", "-1"]).status.code(), Some(64));
    assert_eq!(korenblum(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(korenblum(&["--help"]).status.code(), Some(0));
}
