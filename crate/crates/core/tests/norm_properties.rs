use korenblum_core::radial::{weighted_sup_estimate, RadialGrid, Weight};
use korenblum_core::suite::{self, Status, SuiteConfig};
use korenblum_core::{operators, sampling};

/// Fitted once on seed 7 (largest observed ratio about 5.8 over γ ∈ {0.5, 1, 2})
/// and frozen. Guards against regressions; it is not a sharp constant.
const K_D: f64 = 8.0;

#[test]
fn differentiation_maps_into_the_next_order() {
    let grid = RadialGrid::default();
    for gamma in [0.5, 1.0, 2.0] {
        for f in sampling::random_polynomials(7, 200, 64) {
            let df = operators::differentiate(&f);
            let lhs = weighted_sup_estimate(&df, Weight::power(gamma + 1.0).unwrap(), &grid).unwrap();
            let rhs = weighted_sup_estimate(&f, Weight::power(gamma).unwrap(), &grid).unwrap();
            assert!(lhs <= K_D * rhs, "γ = {gamma}: {lhs} > {K_D}·{rhs}");
        }
    }
}

#[test]
fn multiplication_by_z_is_a_contraction() {
    let grid = RadialGrid::default();
    for gamma in [0.5, 1.0, 2.0] {
        for f in sampling::random_polynomials(11, 100, 64) {
            let w = Weight::power(gamma).unwrap();
            let zf = operators::shift(&f);
            let lhs = weighted_sup_estimate(&zf, w, &grid).unwrap();
            let rhs = weighted_sup_estimate(&f, w, &grid).unwrap();
            assert!(lhs <= 1.01 * rhs);
        }
    }
}

fn statuses(cfg: &SuiteConfig) -> Vec<(String, Status)> {
    suite::run_all(cfg).unwrap().into_iter().map(|v| (v.name, v.status)).collect()
}

#[test]
fn statuses_do_not_depend_on_the_seed() {
    let base = statuses(&SuiteConfig::default());
    let other = statuses(&SuiteConfig { seed: 12345, ..SuiteConfig::default() });
    assert_eq!(base, other);
}

#[test]
fn statuses_survive_two_more_dyadic_levels() {
    let base = statuses(&SuiteConfig::default());
    let deeper = statuses(&SuiteConfig { depth: 14, ..SuiteConfig::default() });
    assert_eq!(base, deeper);
}

#[test]
fn run_all_is_deterministic() {
    let strip = |mut v: Vec<suite::Verdict>| {
        v.iter_mut().for_each(|x| x.runtime_ms = None);
        v
    };
    let cfg = SuiteConfig::default();
    let a = strip(suite::run_all(&cfg).unwrap());
    let b = strip(suite::run_all(&cfg).unwrap());
    assert_eq!(a, b);
}

#[test]
fn corrupted_tolerance_produces_a_failure() {
    let cfg = SuiteConfig { slope_tol: 1e-9, ..SuiteConfig::default() };
    let verdicts = suite::run_checks(&["check_example_E1", "check_multiplier_PH"], &cfg).unwrap();
    assert!(verdicts.iter().any(|v| v.status == Status::Fail));
    assert_eq!(suite::exit_code(&verdicts), 1);
}

#[test]
fn invalid_config_is_rejected() {
    let cfg = SuiteConfig { slack: 0.0, ..SuiteConfig::default() };
    assert!(suite::run_all(&cfg).is_err());
    let cfg = SuiteConfig { depth: 3, ..SuiteConfig::default() };
    assert!(suite::run_all(&cfg).is_err());
}

#[test]
fn verdicts_serialize_as_json_lines() {
    let verdicts = suite::run_checks(&["check_cesaro_inverse"], &SuiteConfig::default()).unwrap();
    let line = serde_json::to_string(&verdicts[0]).unwrap();
    assert!(!line.contains('\n'));
    let back: suite::Verdict = serde_json::from_str(&line).unwrap();
    assert_eq!(back, verdicts[0]);
}
