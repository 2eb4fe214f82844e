//! Named, reproducible checks of operator identities, norm bounds and
//! space containments, each producing a [`Verdict`].
//!
//! Statements quantified over all functions are checked on seeded random
//! polynomials and recorded as passing on that sample; containment claims
//! are checked on explicit closed-form witnesses.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{catalog, g0_prime, AnalyticExpr};
use crate::function::{DiscFunction, FnDisc, ProductOf};
use crate::operators::{self, LogSymbolVolterra};
use crate::radial::{
    self, classify_membership, growth_exponent, odomain_membership, radial_profile, weighted_sup_estimate,
    weighted_tail_fit, ClassifyTolerances, Membership, RadialGrid, RadialProfile, Variant, Weight,
};
use crate::sampling;
use crate::series::{self, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub params: BTreeMap<String, f64>,
    pub stats: BTreeMap<String, f64>,
    pub witnesses: Vec<String>,
    pub tolerances: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    /// Diagnostics report measurements and never count towards the exit status.
    pub diagnostic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

struct Builder {
    verdict: Verdict,
    failed: bool,
    inconclusive: bool,
}

impl Builder {
    fn new(name: &str, params: &[(&str, f64)]) -> Self {
        Self {
            verdict: Verdict {
                name: name.to_string(),
                status: Status::Pass,
                params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                stats: BTreeMap::new(),
                witnesses: Vec::new(),
                tolerances: BTreeMap::new(),
                notes: Vec::new(),
                diagnostic: false,
                runtime_ms: None,
            },
            failed: false,
            inconclusive: false,
        }
    }

    fn stat(&mut self, key: &str, value: f64) {
        self.verdict.stats.insert(key.to_string(), value);
    }

    fn tol(&mut self, key: &str, value: f64) {
        self.verdict.tolerances.insert(key.to_string(), value);
    }

    fn witness(&mut self, w: impl Into<String>) {
        self.verdict.witnesses.push(w.into());
    }

    fn note(&mut self, n: impl Into<String>) {
        self.verdict.notes.push(n.into());
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failed = true;
            self.verdict.notes.push(format!("failed: {}", what.into()));
        }
    }

    /// A classifier outcome that is expected to be `want`.
    fn expect_membership(&mut self, got: Membership, want: Membership, what: &str) {
        if got == Membership::Inconclusive {
            self.inconclusive = true;
            self.note(format!("inconclusive: {what}"));
        } else {
            self.require(got == want, format!("{what}: got {got}, expected {want}"));
        }
    }

    fn expect_member(&mut self, got: Option<bool>, want: bool, what: &str) {
        match got {
            None => {
                self.inconclusive = true;
                self.note(format!("inconclusive: {what}"));
            }
            Some(m) => self.require(m == want, format!("{what}: member = {m}, expected {want}")),
        }
    }

    fn finish(mut self) -> Verdict {
        self.verdict.status = if self.failed {
            Status::Fail
        } else if self.inconclusive {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        self.verdict
    }
}

/// Parameters, sampling sizes and tolerances for the whole suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub depth: u32,
    pub angles: usize,
    pub seed: u64,
    /// Truncation degree for Taylor expansions.
    pub degree: usize,
    pub samples: usize,
    pub max_poly_degree: usize,
    pub classify: ClassifyTolerances,
    /// Multiplicative slack on sampled norm inequalities.
    pub slack: f64,
    /// Bound on weighted profiles that should not exceed 1.
    pub unit_bound: f64,
    /// Half-width accepted around predicted slopes and growth exponents.
    pub slope_tol: f64,
    /// Coefficient-wise tolerance for exact identities.
    pub identity_tol: f64,
    /// Allowed growth between consecutive density distances.
    pub density_step: f64,
    /// Required reduction `d_last / d_first`.
    pub density_ratio: f64,
    /// Relative change of a sampled operator-norm ratio allowed under grid refinement.
    pub refinement_stability: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            depth: radial::DEFAULT_DEPTH,
            angles: radial::DEFAULT_ANGLES,
            seed: 7,
            degree: series::DEFAULT_DEGREE,
            samples: 200,
            max_poly_degree: 64,
            classify: ClassifyTolerances::default(),
            slack: 1.01,
            unit_bound: 1.001,
            slope_tol: 0.05,
            identity_tol: 1e-12,
            density_step: 1.05,
            density_ratio: 0.1,
            refinement_stability: 0.10,
        }
    }
}

impl SuiteConfig {
    pub fn grid(&self) -> Result<RadialGrid> {
        RadialGrid::new(self.depth, self.angles)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid()?;
        let must_be_positive = [
            ("slack", self.slack),
            ("unit_bound", self.unit_bound),
            ("slope_tol", self.slope_tol),
            ("identity_tol", self.identity_tol),
            ("density_step", self.density_step),
            ("density_ratio", self.density_ratio),
            ("refinement_stability", self.refinement_stability),
            ("classify.zero_level", self.classify.zero_level),
            ("classify.band", self.classify.band),
            ("classify.slope", self.classify.slope),
            ("classify.growth_ratio", self.classify.growth_ratio),
        ];
        for (name, v) in must_be_positive {
            if !positive(v) {
                return Err(Error::BadParams { name: name.into(), reason: format!("{v} must be positive") });
            }
        }
        if self.degree < 8 {
            return Err(Error::BadParams { name: "degree".into(), reason: "must be at least 8".into() });
        }
        if self.classify.window < 3 || self.classify.window > self.depth as usize {
            return Err(Error::BadParams { name: "classify.window".into(), reason: "must lie in 3..=depth".into() });
        }
        Ok(())
    }
}

fn positive(x: f64) -> bool {
    x > 0.0 && x.is_finite()
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn pow_witness(alpha: f64) -> Result<AnalyticExpr> {
    catalog("pow_witness", &[c(alpha)])
}

fn unweighted() -> Weight {
    Weight::Power { gamma: 1.0 }
}

/// Sup of `(1-r)^γ maxmod(r)` over a profile, whatever its stored weight.
fn sup_at(profile: &RadialProfile, gamma: f64) -> f64 {
    profile.points.iter().map(|p| (1.0 - p.r).powf(gamma) * p.maxmod).fold(0.0, f64::max)
}

pub fn check_cesaro_inverse(max_n: usize, cfg: &SuiteConfig) -> Result<Verdict> {
    if max_n < 1 {
        return Err(Error::Precondition("maxN must be at least 1".into()));
    }
    let mut b = Builder::new("check_cesaro_inverse", &[("max_n", max_n as f64)]);
    let cap = 64.max(max_n + 1);
    let mut worst = 0.0f64;
    for n in 0..=max_n {
        // (n + 1)(1 - z) z^n
        let mut coeffs = vec![c(0.0); n + 2];
        coeffs[n] = c((n + 1) as f64);
        coeffs[n + 1] = c(-((n + 1) as f64));
        let image = operators::cesaro(&TruncatedSeries::new(coeffs)?, cap);
        worst = worst.max(image.max_abs_diff(&TruncatedSeries::monomial(n).with_degree(cap)));
    }
    let mut rng = sampling::rng(cfg.seed);
    let mut worst_round_trip = 0.0f64;
    for _ in 0..cfg.samples {
        let f = sampling::random_polynomial_of_degree(&mut rng, 64);
        let back = operators::cesaro_inverse(&operators::cesaro(&f, 64), 64);
        worst_round_trip = worst_round_trip.max(back.max_abs_diff(&f));
    }
    b.stat("max_monomial_error", worst);
    b.stat("max_round_trip_error", worst_round_trip);
    b.stat("samples", cfg.samples as f64);
    b.tol("identity", cfg.identity_tol);
    b.witness(format!("(n+1)(1-z)z^n, n = 0..={max_n}"));
    b.require(worst <= cfg.identity_tol, "C((n+1)(1-z)z^n) = z^n");
    b.require(worst_round_trip <= cfg.identity_tol, "C^{-1} C f = f");
    Ok(b.finish())
}

pub fn check_shift_identities(samples: usize, seed: u64, cfg: &SuiteConfig) -> Result<Verdict> {
    let mut b = Builder::new("check_shift_identities", &[("samples", samples as f64), ("seed", seed as f64)]);
    let mut rng = sampling::rng(seed);
    let mut worst = BTreeMap::from([("st", 0.0f64), ("ts", 0.0), ("v_eq_s_t", 0.0), ("t_eq_t_v", 0.0)]);
    for i in 0..samples {
        let f = sampling::random_polynomial(&mut rng, cfg.max_poly_degree);
        let gprime = match i % 3 {
            0 => TruncatedSeries::geometric(16),
            1 => TruncatedSeries::constant(c(1.0)),
            _ => sampling::random_polynomial_of_degree(&mut rng, 16),
        };
        let mut h = sampling::random_polynomial(&mut rng, cfg.max_poly_degree).into_coeffs();
        h[0] = c(0.0);
        let h = TruncatedSeries::new(h)?;

        let st = operators::shift(&operators::backshift(&h)?);
        let ts = operators::backshift(&operators::shift(&f))?;
        let cap = operators::natural_volterra_degree(&gprime, &f);
        let v = operators::volterra(&gprime, &f, cap);
        let t = operators::averaged(&gprime, &f, cap - 1);
        let upd = |m: &mut BTreeMap<&str, f64>, k: &'static str, e: f64| {
            let slot = m.get_mut(k).expect("known key");
            *slot = slot.max(e);
        };
        upd(&mut worst, "st", st.max_abs_diff(&h));
        upd(&mut worst, "ts", ts.max_abs_diff(&f));
        upd(&mut worst, "v_eq_s_t", v.max_abs_diff(&operators::shift(&t)));
        upd(&mut worst, "t_eq_t_v", t.max_abs_diff(&operators::backshift(&v)?));
    }
    for (k, v) in &worst {
        b.stat(&format!("max_error_{k}"), *v);
        b.require(*v <= cfg.identity_tol, format!("identity {k}"));
    }
    b.tol("identity", cfg.identity_tol);
    b.witness("g' in {1/(1-z) to degree 16, 1, random degree-16}");
    Ok(b.finish())
}

pub fn check_j_norm_bound(gammas: &[f64], samples: usize, seed: u64, cfg: &SuiteConfig) -> Result<Verdict> {
    if !gammas.iter().all(|g| positive(*g)) {
        return Err(Error::Precondition("all γ must be positive".into()));
    }
    let mut params: Vec<(&str, f64)> = vec![("samples", samples as f64), ("seed", seed as f64)];
    let names: Vec<String> = (0..gammas.len()).map(|i| format!("gamma_{i}")).collect();
    params.extend(names.iter().map(String::as_str).zip(gammas.iter().copied()));
    let mut b = Builder::new("check_j_norm_bound", &params);
    let grid = cfg.grid()?;
    let polys = sampling::random_polynomials(seed, samples, cfg.max_poly_degree);
    let profiles = polys
        .par_iter()
        .map(|f| {
            let jf = operators::integrate(f);
            Ok((radial_profile(f, unweighted(), &grid)?, radial_profile(&jf, unweighted(), &grid)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut violations = 0usize;
    for &gamma in gammas {
        let mut worst = 0.0f64;
        for (pf, pj) in &profiles {
            let lhs = gamma * sup_at(pj, gamma);
            let rhs = sup_at(pf, gamma + 1.0);
            if lhs > cfg.slack * rhs {
                violations += 1;
            }
            if rhs > 0.0 {
                worst = worst.max(lhs / rhs);
            }
        }
        b.stat(&format!("max_ratio_gamma_{gamma}"), worst);
    }
    b.stat("violations", violations as f64);
    b.tol("slack", cfg.slack);
    b.witness(format!("{samples} random polynomials of degree <= {}", cfg.max_poly_degree));
    b.require(violations == 0, format!("γ‖Jf‖ ≤ slack·‖f‖ violated {violations} times"));
    Ok(b.finish())
}

pub fn check_example_e1(gamma: f64, cfg: &SuiteConfig) -> Result<Verdict> {
    if !positive(gamma) {
        return Err(Error::Precondition("γ must be positive".into()));
    }
    let mut b = Builder::new("check_example_E1", &[("gamma", gamma)]);
    let grid = cfg.grid()?;
    let f = catalog("e1_witness", &[c(gamma), c(-1.0)])?;
    b.witness(format!("e1_witness({gamma}, -1) = (1-z)(1+z)^-{}", gamma + 1.0));
    b.witness("g = g0");
    let fg = ProductOf(&f, g0_prime());
    let bound = weighted_sup_estimate(&fg, Weight::power(gamma + 1.0)?, &grid)?;
    b.stat("fg_weighted_sup", bound);
    b.tol("unit_bound", cfg.unit_bound);
    b.require(bound <= cfg.unit_bound, "f g0' ∈ A^{-(γ+1)} with norm ≤ 1");

    let ray = radial_profile(&f, Weight::power(gamma)?, &grid.clone().with_ray(PI))?;
    let fit = weighted_tail_fit(&ray, cfg.classify.window)?;
    b.stat("ray_slope", fit.exponent);
    b.stat("ray_residual", fit.residual);
    b.tol("slope", cfg.slope_tol);
    b.require((fit.exponent - 1.0).abs() <= cfg.slope_tol, "ray profile (1-r)^γ|f(-r)| grows with slope 1");
    Ok(b.finish())
}

pub fn check_prop_i(gamma: f64, beta: f64, cfg: &SuiteConfig) -> Result<Verdict> {
    if !(positive(gamma) && beta > gamma) {
        return Err(Error::Precondition(format!("need β > γ > 0, got γ = {gamma}, β = {beta}")));
    }
    let mut b = Builder::new("check_prop_I", &[("gamma", gamma), ("beta", beta)]);
    let grid = cfg.grid()?;
    let f = pow_witness(beta)?;
    b.witness(format!("pow_witness({beta})"));
    let own = classify_membership(&f, beta, &grid, &cfg.classify)?;
    if own.membership == Membership::Inconclusive {
        b.expect_membership(own.membership, Membership::InANotA0, "f in A^{-β}");
    } else {
        b.require(own.membership != Membership::NotInA, "f ∈ A^{-β}");
    }
    let dom = odomain_membership(&g0_prime(), &f, gamma, Variant::Full, &grid, &cfg.classify)?;
    if let Some(s) = dom.classification.slope {
        b.stat("fg_weighted_slope", s);
    }
    b.expect_member(dom.member, false, "f ∈ [C, A^{-γ}]");
    Ok(b.finish())
}

pub fn check_prop_j(gamma: f64, cfg: &SuiteConfig) -> Result<Verdict> {
    if !positive(gamma) {
        return Err(Error::Precondition("γ must be positive".into()));
    }
    let mut b = Builder::new("check_prop_J", &[("gamma", gamma)]);
    let grid = cfg.grid()?;
    let tol = &cfg.classify;

    let f1 = pow_witness(gamma)?;
    b.witness(format!("f1 = pow_witness({gamma})"));
    let m = classify_membership(&f1, gamma, &grid, tol)?;
    b.expect_membership(m.membership, Membership::InANotA0, "f1 at order γ");
    let m = classify_membership(&ProductOf(&f1, g0_prime()), gamma + 1.0, &grid, tol)?;
    b.expect_membership(m.membership, Membership::InANotA0, "f1 g0' at order γ+1");

    let f2 = catalog("propJ_witness", &[c(gamma)])?;
    b.witness(format!("f2 = propJ_witness({gamma}) = (1-z)(1+z)^-{}", gamma + 0.5));
    let m = classify_membership(&ProductOf(&f2, g0_prime()), gamma + 1.0, &grid, tol)?;
    b.expect_membership(m.membership, Membership::InA0, "f2 g0' at order γ+1");
    let ray = radial_profile(&f2, Weight::power(gamma)?, &grid.clone().with_ray(PI))?;
    let fit = weighted_tail_fit(&ray, tol.window)?;
    b.stat("f2_ray_slope", fit.exponent);
    b.tol("slope", cfg.slope_tol);
    b.require((fit.exponent - 0.5).abs() <= cfg.slope_tol, "ray profile of f2 grows with slope 1/2");
    Ok(b.finish())
}

pub fn check_inclusion_proper(gamma: f64, beta: f64, eps: f64, cfg: &SuiteConfig) -> Result<Verdict> {
    if !(positive(gamma) && gamma < beta) {
        return Err(Error::Precondition(format!("need 0 < γ < β, got γ = {gamma}, β = {beta}")));
    }
    if !(positive(eps) && eps < beta - gamma) {
        return Err(Error::Precondition(format!("need 0 < ε < β - γ, got ε = {eps}")));
    }
    let mut b = Builder::new("check_inclusion_proper", &[("gamma", gamma), ("beta", beta), ("eps", eps)]);
    let grid = cfg.grid()?;
    let f = pow_witness(gamma + 1.0 + eps)?;
    let one = AnalyticExpr::constant(1.0);
    b.witness(format!("pow_witness({})", gamma + 1.0 + eps));
    b.witness("g = z");
    let big = odomain_membership(&one, &f, beta, Variant::Full, &grid, &cfg.classify)?;
    b.expect_member(big.member, true, "f ∈ [V_z, A^{-β}]");
    let small = odomain_membership(&one, &f, gamma, Variant::Full, &grid, &cfg.classify)?;
    b.expect_member(small.member, false, "f ∈ [V_z, A^{-γ}]");
    Ok(b.finish())
}

pub fn check_multiplier_ph(gamma: f64, delta: f64, cfg: &SuiteConfig) -> Result<Verdict> {
    if !(positive(gamma) && gamma < delta) {
        return Err(Error::Precondition(format!("need 0 < γ < δ, got γ = {gamma}, δ = {delta}")));
    }
    let mut b = Builder::new("check_multiplier_PH", &[("gamma", gamma), ("delta", delta)]);
    let grid = cfg.grid()?;
    let f = pow_witness(gamma)?;

    let h = pow_witness(delta - gamma)?;
    b.witness(format!("h = pow_witness({}), f = pow_witness({gamma})", delta - gamma));
    let est = weighted_sup_estimate(&ProductOf(&h, &f), Weight::power(delta)?, &grid)?;
    b.stat("positive_weighted_sup", est);
    b.tol("unit_bound", cfg.unit_bound);
    b.require(est <= cfg.unit_bound, "(a) ‖hf‖_{-δ} ≤ 1");

    let h = pow_witness(delta - gamma + 0.25)?;
    b.witness(format!("h = pow_witness({})", delta - gamma + 0.25));
    let fit = growth_exponent(&radial_profile(&ProductOf(&h, &f), unweighted(), &grid)?, cfg.classify.window)?;
    b.stat("negative_growth_exponent", fit.exponent);
    b.tol("slope", cfg.slope_tol);
    b.require((fit.exponent - (delta + 0.25)).abs() <= cfg.slope_tol, "(b) growth exponent of hf is δ + 1/4");

    if delta - gamma > 0.25 {
        let h = pow_witness(delta - gamma - 0.25)?;
        b.witness(format!("h = pow_witness({})", delta - gamma - 0.25));
        let m = classify_membership(&ProductOf(&h, &f), delta, &grid, &cfg.classify)?;
        b.expect_membership(m.membership, Membership::InA0, "(c) hf at order δ");
    } else {
        b.note("part (c) skipped: δ - γ ≤ 1/4");
    }
    Ok(b.finish())
}

pub fn check_mult_optimal_domain(gamma: f64, samples: usize, cfg: &SuiteConfig) -> Result<Verdict> {
    if !positive(gamma) {
        return Err(Error::Precondition("γ must be positive".into()));
    }
    let mut b = Builder::new("check_mult_optimal_domain", &[("gamma", gamma), ("samples", samples as f64)]);
    let grid = cfg.grid()?;
    // g = z, so f g' = f
    let polys = sampling::random_polynomials(cfg.seed.wrapping_add(1), samples, cfg.max_poly_degree);
    let ratios = polys
        .par_iter()
        .map(|f| {
            let hf = operators::shift(f);
            let w = Weight::power(gamma + 1.0)?;
            Ok((weighted_sup_estimate(&hf, w, &grid)?, weighted_sup_estimate(f, w, &grid)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = ratios.iter().filter(|(hf, f)| *hf > cfg.slack * f).count();
    let worst = ratios.iter().map(|(hf, f)| hf / f).fold(0.0, f64::max);
    b.stat("max_multiplier_ratio", worst);
    b.stat("violations", violations as f64);
    b.tol("slack", cfg.slack);
    b.witness("h = z");
    b.require(violations == 0, "(a) ‖z f g'‖ ≤ slack·‖f g'‖");

    let h = pow_witness(0.25)?;
    let f = pow_witness(gamma + 1.0)?;
    b.witness(format!("h = pow_witness(0.25), f = pow_witness({})", gamma + 1.0));
    let fit = growth_exponent(&radial_profile(&ProductOf(&h, &f), unweighted(), &grid)?, cfg.classify.window)?;
    b.stat("unbounded_multiplier_growth", fit.exponent);
    b.tol("slope", cfg.slope_tol);
    b.require((fit.exponent - (gamma + 1.25)).abs() <= cfg.slope_tol, "(b) growth exponent of h f g' is γ + 5/4");
    Ok(b.finish())
}

/// `d_N = sup (1-|z|)^{γ+1} |(S_N f - f)(z) g'(z)|` for each `N`.
pub fn density_distances<F, G>(
    f: &F,
    taylor: &TruncatedSeries,
    gprime: &G,
    gamma: f64,
    orders: &[usize],
    grid: &RadialGrid,
) -> Result<Vec<f64>>
where
    F: DiscFunction + ?Sized,
    G: DiscFunction + ?Sized,
{
    let weight = Weight::power(gamma + 1.0)?;
    orders
        .iter()
        .map(|&n| {
            let partial = taylor.partial_sum(n);
            let diff = FnDisc(|z: Complex64| Ok((partial.evaluate(z)? - f.value(z)?) * gprime.value(z)?));
            weighted_sup_estimate(&diff, weight, grid)
        })
        .collect()
}

pub fn check_density_partial_sums(gamma: f64, orders: &[usize], cfg: &SuiteConfig) -> Result<Verdict> {
    if !positive(gamma) {
        return Err(Error::Precondition("γ must be positive".into()));
    }
    let mut params: Vec<(&str, f64)> = vec![("gamma", gamma)];
    let names: Vec<String> = (0..orders.len()).map(|i| format!("n_{i}")).collect();
    params.extend(names.iter().map(String::as_str).zip(orders.iter().map(|&n| n as f64)));
    let mut b = Builder::new("check_density_partial_sums", &params);
    let grid = cfg.grid()?;
    let f = catalog("propJ_witness", &[c(gamma)])?;
    b.witness(format!("propJ_witness({gamma}), g = g0"));
    let top = orders.iter().copied().max().unwrap_or(0);
    let taylor = f.taylor(top)?;
    let d = density_distances(&f, &taylor, &g0_prime(), gamma, orders, &grid)?;
    for (n, v) in orders.iter().zip(&d) {
        b.stat(&format!("d_{n}"), *v);
    }
    b.tol("step", cfg.density_step);
    b.tol("ratio", cfg.density_ratio);
    if d.len() < 2 {
        b.inconclusive = true;
        b.note("a single order cannot show a trend");
        return Ok(b.finish());
    }
    let ratio = d[d.len() - 1] / d[0];
    b.stat("ratio_last_first", ratio);
    b.require(d.windows(2).all(|w| w[1] <= cfg.density_step * w[0]), "d_N non-increasing up to the step factor");
    b.require(
        ratio <= cfg.density_ratio,
        format!("d_last / d_first = {ratio:.4} exceeds the required {}", cfg.density_ratio),
    );
    Ok(b.finish())
}

/// `V_g f` evaluable up to the boundary, for the symbols used by the sampled checks.
enum VolterraImage {
    Polynomial(TruncatedSeries),
    Log(LogSymbolVolterra),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symbol {
    G0,
    Z,
    Z2,
}

impl Symbol {
    fn label(self) -> &'static str {
        match self {
            Self::G0 => "g0",
            Self::Z => "z",
            Self::Z2 => "z^2",
        }
    }

    fn gprime(self) -> Option<TruncatedSeries> {
        match self {
            Self::G0 => None,
            Self::Z => Some(TruncatedSeries::constant(c(1.0))),
            Self::Z2 => Some(TruncatedSeries::from_finite(vec![c(0.0), c(2.0)])),
        }
    }

    fn volterra(self, f: &TruncatedSeries) -> VolterraImage {
        match self.gprime() {
            None => VolterraImage::Log(LogSymbolVolterra::new(f)),
            Some(g) => VolterraImage::Polynomial(operators::volterra(&g, f, operators::natural_volterra_degree(&g, f))),
        }
    }

    fn averaged(self, f: &TruncatedSeries) -> VolterraImage {
        match self.gprime() {
            None => VolterraImage::Log(LogSymbolVolterra::new(f)),
            Some(g) => VolterraImage::Polynomial(operators::averaged(&g, f, operators::natural_averaged_degree(&g, f))),
        }
    }
}

struct AsVolterra<'a>(&'a VolterraImage);
struct AsAveraged<'a>(&'a VolterraImage);

impl DiscFunction for AsVolterra<'_> {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        match self.0 {
            VolterraImage::Polynomial(p) => p.evaluate(z),
            VolterraImage::Log(l) => l.volterra(z),
        }
    }
}

impl DiscFunction for AsAveraged<'_> {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        match self.0 {
            VolterraImage::Polynomial(p) => p.evaluate(z),
            VolterraImage::Log(l) => l.cesaro(z),
        }
    }
}

pub fn check_volterra_boundedness(gamma: f64, samples: usize, cfg: &SuiteConfig) -> Result<Verdict> {
    if !positive(gamma) {
        return Err(Error::Precondition("γ must be positive".into()));
    }
    let mut b = Builder::new("check_volterra_boundedness", &[("gamma", gamma), ("samples", samples as f64)]);
    let grid = cfg.grid()?;
    let finer = grid.deeper(2);
    let weight = Weight::power(gamma)?;
    let polys = sampling::random_polynomials(cfg.seed.wrapping_add(2), samples, cfg.max_poly_degree);
    b.tol("refinement_stability", cfg.refinement_stability);
    for symbol in [Symbol::G0, Symbol::Z, Symbol::Z2] {
        b.witness(format!("g = {}", symbol.label()));
        let ratios = polys
            .par_iter()
            .filter(|f| !f.is_zero())
            .map(|f| {
                let image = symbol.volterra(f);
                let on = |g: &RadialGrid| -> Result<f64> {
                    Ok(weighted_sup_estimate(&AsVolterra(&image), weight, g)? / weighted_sup_estimate(f, weight, g)?)
                };
                Ok((on(&grid)?, on(&finer)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let coarse = ratios.iter().map(|r| r.0).fold(0.0, f64::max);
        let fine = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
        b.stat(&format!("max_ratio_{}", symbol.label()), coarse);
        b.stat(&format!("max_ratio_refined_{}", symbol.label()), fine);
        b.require(coarse.is_finite() && fine.is_finite(), format!("finite ratios for g = {}", symbol.label()));
        b.require(
            (fine - coarse).abs() <= cfg.refinement_stability * coarse,
            format!("ratio stable under refinement for g = {}", symbol.label()),
        );
    }
    Ok(b.finish())
}

pub fn check_e2_iii(gamma: f64, n: usize, cfg: &SuiteConfig) -> Result<Verdict> {
    if !positive(gamma) || n < 1 {
        return Err(Error::Precondition("need γ > 0 and n ≥ 1".into()));
    }
    let mut b = Builder::new("check_E2_iii", &[("gamma", gamma), ("n", n as f64)]);
    let grid = cfg.grid()?;
    let gprime = AnalyticExpr::monomial(n).derivative();
    b.witness(format!("g = z^{n}"));
    let f_in = pow_witness(gamma + 1.0)?;
    b.witness(format!("f_in = pow_witness({})", gamma + 1.0));
    let m = odomain_membership(&gprime, &f_in, gamma, Variant::Full, &grid, &cfg.classify)?;
    b.expect_member(m.member, true, "f_in ∈ [V_g, A^{-γ}]");
    let f_out = pow_witness(gamma + 1.25)?;
    b.witness(format!("f_out = pow_witness({})", gamma + 1.25));
    let m = odomain_membership(&gprime, &f_out, gamma, Variant::Full, &grid, &cfg.classify)?;
    if let Some(s) = m.classification.slope {
        b.stat("f_out_weighted_slope", s);
    }
    b.expect_member(m.member, false, "f_out ∈ [V_g, A^{-γ}]");
    Ok(b.finish())
}

pub fn check_pugu_equivalence(gamma: f64, samples: usize, cfg: &SuiteConfig) -> Result<Verdict> {
    if !positive(gamma) {
        return Err(Error::Precondition("γ must be positive".into()));
    }
    let mut b = Builder::new("check_pugu_equivalence", &[("gamma", gamma), ("samples", samples as f64)]);
    let grid = cfg.grid()?;
    let weight = Weight::power(gamma)?;
    // ‖T f‖ ≤ max{2, 2 v(0) / v(1/2)} ‖f‖ with v(r) = (1 - r)^γ
    let backshift_bound = 2f64.max(2.0 * 2f64.powf(gamma));
    b.stat("backshift_bound", backshift_bound);
    b.tol("slack", cfg.slack);
    let polys = sampling::random_polynomials(cfg.seed.wrapping_add(3), samples, cfg.max_poly_degree);
    for symbol in [Symbol::G0, Symbol::Z] {
        b.witness(format!("g = {}", symbol.label()));
        let norms = polys
            .par_iter()
            .map(|f| {
                let v = symbol.volterra(f);
                let t = symbol.averaged(f);
                Ok((
                    weighted_sup_estimate(&AsVolterra(&v), weight, &grid)?,
                    weighted_sup_estimate(&AsAveraged(&t), weight, &grid)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let upper = norms.iter().filter(|(v, t)| *v > cfg.slack * t).count();
        let lower = norms.iter().filter(|(v, t)| *t > cfg.slack * backshift_bound * v).count();
        let worst = norms.iter().filter(|(v, _)| *v > 0.0).map(|(v, t)| t / v).fold(0.0, f64::max);
        b.stat(&format!("max_t_over_v_{}", symbol.label()), worst);
        b.stat(&format!("violations_{}", symbol.label()), (upper + lower) as f64);
        b.require(upper == 0, format!("‖V_g f‖ ≤ slack·‖T_g f‖ for g = {}", symbol.label()));
        b.require(lower == 0, format!("‖T_g f‖ ≤ slack·bound·‖V_g f‖ for g = {}", symbol.label()));
    }
    Ok(b.finish())
}

/// Weighted ray profile of `(1-z)^{1/2} f g0'` for the E1 witness at order
/// `γ + 1`. Reports the level only; never passes or fails.
pub fn e1_littleoh_diagnostic(gamma: f64, cfg: &SuiteConfig) -> Result<Verdict> {
    let mut b = Builder::new("e1_littleoh_diagnostic", &[("gamma", gamma)]);
    b.verdict.diagnostic = true;
    let grid = cfg.grid()?.with_ray(PI);
    let f0g = AnalyticExpr::lin_pow(c(1.0), 0.5)?.times(catalog("e1_fgprime", &[c(gamma), c(-1.0)])?);
    b.witness(format!("(1-z)^(1/2) e1_fgprime({gamma}, -1)"));
    let profile = radial_profile(&f0g, Weight::power(gamma + 1.0)?, &grid)?;
    let weighted = profile.weighted();
    b.stat("tail_level", *weighted.last().unwrap_or(&0.0));
    b.stat("tail_slope", weighted_tail_fit(&profile, cfg.classify.window)?.exponent);
    b.inconclusive = true;
    b.note("profile along θ = π stays bounded away from 0; reported without a claim");
    Ok(b.finish())
}

type Runner = fn(&SuiteConfig) -> Vec<Result<Verdict>>;

/// A named check with its default parameter sets.
pub struct CheckDef {
    pub name: &'static str,
    run: Runner,
}

pub const CHECKS: &[CheckDef] = &[
    CheckDef { name: "check_cesaro_inverse", run: |cfg| vec![check_cesaro_inverse(50, cfg)] },
    CheckDef { name: "check_shift_identities", run: |cfg| vec![check_shift_identities(cfg.samples, cfg.seed, cfg)] },
    CheckDef {
        name: "check_j_norm_bound",
        run: |cfg| vec![check_j_norm_bound(&[0.5, 1.0, 2.0], cfg.samples, cfg.seed, cfg)],
    },
    CheckDef { name: "check_example_E1", run: |cfg| [0.5, 1.0, 2.0].iter().map(|&g| check_example_e1(g, cfg)).collect() },
    CheckDef { name: "check_prop_I", run: |cfg| vec![check_prop_i(1.0, 1.5, cfg), check_prop_i(1.0, 2.0, cfg)] },
    CheckDef { name: "check_prop_J", run: |cfg| [0.5, 1.0, 2.0].iter().map(|&g| check_prop_j(g, cfg)).collect() },
    CheckDef {
        name: "check_inclusion_proper",
        run: |cfg| vec![check_inclusion_proper(1.0, 1.5, 0.25, cfg), check_inclusion_proper(0.5, 1.0, 0.25, cfg)],
    },
    CheckDef {
        name: "check_multiplier_PH",
        run: |cfg| [(1.0, 2.0), (0.5, 1.5), (1.0, 1.2)].iter().map(|&(g, d)| check_multiplier_ph(g, d, cfg)).collect(),
    },
    CheckDef {
        name: "check_mult_optimal_domain",
        run: |cfg| [1.0, 2.0].iter().map(|&g| check_mult_optimal_domain(g, 100, cfg)).collect(),
    },
    CheckDef {
        name: "check_density_partial_sums",
        run: |cfg| {
            [1.0, 2.0].iter().map(|&g| check_density_partial_sums(g, &[16, 32, 64, 128, 256], cfg)).collect()
        },
    },
    CheckDef { name: "check_volterra_boundedness", run: |cfg| vec![check_volterra_boundedness(1.0, 100, cfg)] },
    CheckDef {
        name: "check_E2_iii",
        run: |cfg| {
            let mut out = Vec::new();
            for n in 1..=3 {
                for g in [0.5, 1.0, 2.0] {
                    out.push(check_e2_iii(g, n, cfg));
                }
            }
            out
        },
    },
    CheckDef { name: "check_pugu_equivalence", run: |cfg| vec![check_pugu_equivalence(1.0, 100, cfg)] },
    CheckDef { name: "e1_littleoh_diagnostic", run: |cfg| vec![e1_littleoh_diagnostic(1.0, cfg)] },
];

pub fn find_check(name: &str) -> Option<&'static CheckDef> {
    CHECKS.iter().find(|c| c.name.eq_ignore_ascii_case(name))
}

fn error_verdict(name: &str, err: &Error) -> Verdict {
    let mut b = Builder::new(name, &[]);
    b.require(false, format!("error: {err}"));
    b.finish()
}

impl CheckDef {
    /// Runs every default parameter set; errors become `Fail` verdicts.
    pub fn run(&self, cfg: &SuiteConfig) -> Vec<Verdict> {
        let start = Instant::now();
        let results = (self.run)(cfg);
        let elapsed = start.elapsed().as_secs_f64() * 1e3 / results.len().max(1) as f64;
        results
            .into_iter()
            .map(|r| {
                let mut v = r.unwrap_or_else(|e| error_verdict(self.name, &e));
                v.runtime_ms = Some(elapsed);
                v
            })
            .collect()
    }
}

/// Runs the named checks (all of them when `names` is empty), in order.
pub fn run_checks(names: &[&str], cfg: &SuiteConfig) -> Result<Vec<Verdict>> {
    cfg.validate()?;
    let defs: Vec<&CheckDef> = if names.is_empty() {
        CHECKS.iter().collect()
    } else {
        names.iter().map(|n| find_check(n).ok_or_else(|| Error::UnknownName(n.to_string()))).collect::<Result<_>>()?
    };
    Ok(defs.into_iter().flat_map(|d| d.run(cfg)).collect())
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<Verdict>> {
    run_checks(&[], cfg)
}

/// 0 when every non-diagnostic verdict passes, 1 on any failure, 2 when the
/// worst outcome is inconclusive.
pub fn exit_code(verdicts: &[Verdict]) -> i32 {
    let counted = verdicts.iter().filter(|v| !v.diagnostic);
    let mut code = 0;
    for v in counted {
        match v.status {
            Status::Fail => return 1,
            Status::Inconclusive => code = 2,
            Status::Pass => {}
        }
    }
    code
}

fn fmt_params(params: &BTreeMap<String, f64>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

/// Fixed-width text table, one row per verdict.
pub fn render_table(verdicts: &[Verdict]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<28} {:<13} {:<40} notes", "check", "status", "params");
    for v in verdicts {
        let status = match (v.status, v.diagnostic) {
            (s, true) => format!("{s:?} (diag)"),
            (s, false) => format!("{s:?}"),
        };
        let notes = v.notes.iter().filter(|n| n.starts_with("failed") || n.starts_with("inconclusive")).cloned();
        let _ = writeln!(
            out,
            "{:<28} {:<13} {:<40} {}",
            v.name,
            status,
            fmt_params(&v.params),
            notes.collect::<Vec<_>>().join("; ")
        );
        if let Some(ms) = v.runtime_ms {
            let _ = writeln!(out, "{:<28} runtime {ms:.1} ms", "");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SuiteConfig {
        SuiteConfig::default()
    }

    #[test]
    fn cesaro_inverse_examples() {
        let v = check_cesaro_inverse(50, &cfg()).unwrap();
        assert_eq!(v.status, Status::Pass, "{v:?}");
        let f = TruncatedSeries::from_real(&[1.0, -1.0]).unwrap();
        assert_eq!(operators::cesaro(&f, 1), TruncatedSeries::from_real(&[1.0, 0.0]).unwrap());
        let f = TruncatedSeries::from_real(&[0.0, 0.0, 3.0, -3.0]).unwrap();
        assert_eq!(operators::cesaro(&f, 3), TruncatedSeries::from_real(&[0.0, 0.0, 1.0, 0.0]).unwrap());
        assert!(check_cesaro_inverse(0, &cfg()).is_err());
    }

    #[test]
    fn shift_identities_pass() {
        let v = check_shift_identities(200, 7, &cfg()).unwrap();
        assert_eq!(v.status, Status::Pass, "{v:?}");
    }

    #[test]
    fn shift_example_pairs() {
        let h = TruncatedSeries::from_real(&[0.0, 1.0]).unwrap();
        assert_eq!(operators::shift(&operators::backshift(&h).unwrap()), h);
        let f = TruncatedSeries::from_real(&[1.0, 1.0]).unwrap();
        let g = TruncatedSeries::geometric(6);
        // direct convolution: (1 + z)/(1 - z) has coefficients 1, 2, 2, ...
        let p: Vec<f64> = (0..=6).map(|n| if n == 0 { 1.0 } else { 2.0 }).collect();
        let t_oracle: Vec<f64> = p.iter().enumerate().map(|(n, x)| x / (n + 1) as f64).collect();
        let t = operators::averaged(&g, &f, 6);
        assert!(t.max_abs_diff(&TruncatedSeries::from_real(&t_oracle).unwrap()) < 1e-15);
        let v = operators::volterra(&g, &f, 7);
        assert_eq!(v, operators::shift(&t));
    }

    #[test]
    fn j_norm_bound_constant_example() {
        // ‖z‖_{-1} = 1/4 and ‖1‖_{-2} = 1
        let grid = RadialGrid::default();
        let jf = operators::integrate(&TruncatedSeries::constant(c(1.0)));
        let lhs = weighted_sup_estimate(&jf, Weight::power(1.0).unwrap(), &grid).unwrap();
        assert!((lhs - 0.25).abs() < 1e-12);
        let zero = check_j_norm_bound(&[1.0], 0, 1, &cfg()).unwrap();
        assert_eq!(zero.status, Status::Pass);
        assert!(check_j_norm_bound(&[0.0], 3, 1, &cfg()).is_err());
    }

    #[test]
    fn example_e1_passes() {
        for gamma in [0.5, 1.0, 2.0] {
            let v = check_example_e1(gamma, &cfg()).unwrap();
            assert_eq!(v.status, Status::Pass, "{v:?}");
            assert!((v.stats["ray_slope"] - 1.0).abs() < 0.05);
        }
    }

    #[test]
    fn prop_i_examples() {
        assert_eq!(check_prop_i(1.0, 1.5, &cfg()).unwrap().status, Status::Pass);
        assert_eq!(check_prop_i(1.0, 2.0, &cfg()).unwrap().status, Status::Pass);
        assert!(matches!(check_prop_i(1.0, 1.0, &cfg()), Err(Error::Precondition(_))));
    }

    #[test]
    fn prop_j_examples() {
        for gamma in [0.5, 1.0, 2.0] {
            let v = check_prop_j(gamma, &cfg()).unwrap();
            assert_eq!(v.status, Status::Pass, "{v:?}");
        }
    }

    #[test]
    fn inclusion_examples() {
        assert_eq!(check_inclusion_proper(1.0, 1.5, 0.25, &cfg()).unwrap().status, Status::Pass);
        assert_eq!(check_inclusion_proper(0.5, 1.0, 0.25, &cfg()).unwrap().status, Status::Pass);
        assert!(check_inclusion_proper(1.0, 1.5, 0.5, &cfg()).is_err());
    }

    #[test]
    fn multiplier_examples() {
        let v = check_multiplier_ph(1.0, 2.0, &cfg()).unwrap();
        assert_eq!(v.status, Status::Pass, "{v:?}");
        assert_eq!(v.witnesses.len(), 3);
        let v = check_multiplier_ph(1.0, 1.2, &cfg()).unwrap();
        assert_eq!(v.status, Status::Pass, "{v:?}");
        assert!(v.notes.iter().any(|n| n.contains("skipped")));
        assert!(check_multiplier_ph(1.0, 1.0, &cfg()).is_err());
    }

    #[test]
    fn mult_optimal_domain_examples() {
        for gamma in [1.0, 2.0] {
            let v = check_mult_optimal_domain(gamma, 100, &cfg()).unwrap();
            assert_eq!(v.status, Status::Pass, "{v:?}");
        }
    }

    #[test]
    fn density_of_polynomial_is_exact_beyond_its_degree() {
        let p = TruncatedSeries::from_real(&[1.0, -2.0, 0.5]).unwrap();
        let d = density_distances(&p, &p, &g0_prime(), 1.0, &[1, 2, 5], &RadialGrid::default()).unwrap();
        assert!(d[0] > 0.0);
        assert_eq!(&d[1..], &[0.0, 0.0]);
        let single = check_density_partial_sums(1.0, &[16], &cfg()).unwrap();
        assert_eq!(single.status, Status::Inconclusive);
    }

    #[test]
    fn density_distances_decrease() {
        let v = check_density_partial_sums(1.0, &[16, 32, 64, 128, 256], &cfg()).unwrap();
        let d: Vec<f64> = [16, 32, 64, 128, 256].iter().map(|n| v.stats[&format!("d_{n}")]).collect();
        assert!(d.windows(2).all(|w| w[1] <= w[0]), "{d:?}");
    }

    #[test]
    fn volterra_boundedness_passes() {
        let v = check_volterra_boundedness(1.0, 100, &cfg()).unwrap();
        assert_eq!(v.status, Status::Pass, "{v:?}");
    }

    #[test]
    fn volterra_boundedness_constant_ratio() {
        let grid = RadialGrid::default();
        let w = Weight::power(1.0).unwrap();
        let image = Symbol::G0.volterra(&TruncatedSeries::constant(c(1.0)));
        let direct = weighted_sup_estimate(&catalog("g0", &[]).unwrap(), w, &grid).unwrap();
        assert!((weighted_sup_estimate(&AsVolterra(&image), w, &grid).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn e2_iii_examples() {
        for n in 1..=3 {
            let v = check_e2_iii(1.0, n, &cfg()).unwrap();
            assert_eq!(v.status, Status::Pass, "{v:?}");
        }
    }

    #[test]
    fn pugu_examples() {
        let v = check_pugu_equivalence(1.0, 100, &cfg()).unwrap();
        assert_eq!(v.status, Status::Pass, "{v:?}");
        let one = TruncatedSeries::constant(c(1.0));
        assert_eq!(
            operators::volterra(&one, &one, 1),
            TruncatedSeries::from_real(&[0.0, 1.0]).unwrap()
        );
        assert_eq!(operators::averaged(&one, &one, 0), one);
    }

    #[test]
    fn diagnostic_is_always_inconclusive() {
        let v = e1_littleoh_diagnostic(1.0, &cfg()).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert!(v.diagnostic);
        assert!((v.stats["tail_level"] - 2f64.sqrt()).abs() < 1e-3);
        assert_eq!(exit_code(&[v]), 0);
    }

    #[test]
    fn overtight_slope_fails() {
        let cfg = SuiteConfig { slope_tol: 1e-9, ..cfg() };
        assert_eq!(check_example_e1(1.0, &cfg).unwrap().status, Status::Fail);
    }

    #[test]
    fn unknown_check_is_an_error() {
        assert!(matches!(run_checks(&["no_such_check"], &cfg()), Err(Error::UnknownName(_))));
        assert!(find_check("CHECK_EXAMPLE_E1").is_some());
    }

    #[test]
    fn exit_code_aggregation() {
        let mk = |status, diagnostic| Verdict {
            name: "x".into(),
            status,
            params: BTreeMap::new(),
            stats: BTreeMap::new(),
            witnesses: vec![],
            tolerances: BTreeMap::new(),
            notes: vec![],
            diagnostic,
            runtime_ms: None,
        };
        assert_eq!(exit_code(&[mk(Status::Pass, false)]), 0);
        assert_eq!(exit_code(&[mk(Status::Pass, false), mk(Status::Inconclusive, false)]), 2);
        assert_eq!(exit_code(&[mk(Status::Inconclusive, false), mk(Status::Fail, false)]), 1);
        assert_eq!(exit_code(&[mk(Status::Fail, true)]), 0);
    }
}
