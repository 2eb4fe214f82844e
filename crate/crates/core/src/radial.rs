//! Weighted sup-norm estimation, radial growth profiles and membership
//! classification for the growth spaces `A^{-γ}` and `A_0^{-γ}`.
//!
//! A norm `sup_z v(|z|) |f(z)|` is estimated by sampling a fixed lattice of
//! radii and angles, so every estimate is a lower bound that can only grow
//! under refinement. Growth towards the boundary is read off the dyadic
//! radii `r_k = 1 - 2^{-k}`, where `(1 - r)^{-α}` becomes `2^{αk}` and the
//! exponent is a regression slope.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::AnalyticExpr;
use crate::function::{DiscFunction, ProductOf};
use crate::operators::path_integral_volterra;

/// Radial weight `v`. Only power weights `(1 - r)^γ` are built in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Weight {
    Power { gamma: f64 },
}

impl Weight {
    pub fn power(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::BadParams { name: "power weight".into(), reason: format!("γ = {gamma} must be positive") });
        }
        Ok(Self::Power { gamma })
    }

    pub fn value(&self, r: f64) -> f64 {
        match self {
            Self::Power { gamma } => (1.0 - r).powf(*gamma),
        }
    }

    pub fn order(&self) -> f64 {
        match self {
            Self::Power { gamma } => *gamma,
        }
    }
}

/// Sampling lattice: coarse radii `0, 0.1, …, 0.9`, dyadic radii
/// `1 - 2^{-k}` for `k = 1..=depth`, and `angles` equally spaced angles
/// starting at 0 (or a single ray).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    depth: u32,
    angles: usize,
    ray: Option<f64>,
}

pub const DEFAULT_DEPTH: u32 = 12;
pub const DEFAULT_ANGLES: usize = 720;

impl Default for RadialGrid {
    fn default() -> Self {
        Self { depth: DEFAULT_DEPTH, angles: DEFAULT_ANGLES, ray: None }
    }
}

impl RadialGrid {
    pub fn new(depth: u32, angles: usize) -> Result<Self> {
        if depth < 4 {
            return Err(Error::BadParams { name: "grid".into(), reason: format!("depth {depth} < 4") });
        }
        // 1 - 2^{-k} rounds to 1 beyond k = 52
        if depth > 52 {
            return Err(Error::BadParams { name: "grid".into(), reason: format!("depth {depth} > 52") });
        }
        if angles < 8 {
            return Err(Error::BadParams { name: "grid".into(), reason: format!("{angles} angles < 8") });
        }
        Ok(Self { depth, angles, ray: None })
    }

    /// Restricts sampling to the ray at angle `theta`.
    pub fn with_ray(mut self, theta: f64) -> Self {
        self.ray = Some(theta);
        self
    }

    pub fn without_ray(mut self) -> Self {
        self.ray = None;
        self
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn angle_count(&self) -> usize {
        self.angles
    }

    pub fn ray(&self) -> Option<f64> {
        self.ray
    }

    /// Same lattice with `extra` more dyadic levels.
    pub fn deeper(&self, extra: u32) -> Self {
        Self { depth: self.depth + extra, ..self.clone() }
    }

    /// Radii in increasing order, each tagged with its dyadic level.
    pub fn radii(&self) -> Vec<(f64, Option<u32>)> {
        let mut out: Vec<(f64, Option<u32>)> = (0..10).map(|i| (i as f64 / 10.0, None)).collect();
        for k in 1..=self.depth {
            let r = 1.0 - 0.5f64.powi(k as i32);
            match out.iter_mut().find(|(x, _)| *x == r) {
                Some(slot) => slot.1 = Some(k),
                None => out.push((r, Some(k))),
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }

    pub fn angles(&self) -> Vec<f64> {
        match self.ray {
            Some(theta) => vec![theta],
            None => (0..self.angles).map(|j| PI * (2 * j) as f64 / self.angles as f64).collect(),
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain { re: r, im: 0.0 });
    }
    Ok(())
}

fn max_on_circle<F: DiscFunction + ?Sized>(f: &F, r: f64, angles: &[f64]) -> Result<f64> {
    check_radius(r)?;
    let mut best = 0.0f64;
    for &theta in angles {
        let v = f.value(Complex64::from_polar(r, theta))?.norm();
        if !v.is_finite() {
            return Err(Error::NonFinite { index: 0 });
        }
        best = best.max(v);
    }
    Ok(best)
}

/// `max_j |f(r e^{2πij/M})|`.
pub fn max_modulus<F: DiscFunction + ?Sized>(f: &F, r: f64, angles: usize) -> Result<f64> {
    let thetas: Vec<f64> = (0..angles.max(1)).map(|j| PI * (2 * j) as f64 / angles.max(1) as f64).collect();
    max_on_circle(f, r, &thetas)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub r: f64,
    pub maxmod: f64,
    /// Dyadic level `k` when `r = 1 - 2^{-k}`.
    pub level: Option<u32>,
}

/// Sampled max-modulus profile `r ↦ max_θ |f(re^{iθ})|` with its weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub weight: Weight,
    pub points: Vec<ProfilePoint>,
}

impl RadialProfile {
    pub fn weighted(&self) -> Vec<f64> {
        self.points.iter().map(|p| self.weight.value(p.r) * p.maxmod).collect()
    }

    pub fn sup_weighted(&self) -> f64 {
        self.weighted().into_iter().fold(0.0, f64::max)
    }

    /// Dyadic points in increasing order of level.
    pub fn tail(&self) -> Vec<(u32, ProfilePoint)> {
        self.points.iter().filter_map(|p| p.level.map(|k| (k, *p))).collect()
    }

    /// The same samples under another weight.
    pub fn reweighted(&self, weight: Weight) -> Self {
        Self { weight, points: self.points.clone() }
    }

    /// CSV with header `r,maxmod,weighted`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,maxmod,weighted\n");
        for (p, w) in self.points.iter().zip(self.weighted()) {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", p.r, p.maxmod, w));
        }
        out
    }

    pub fn from_csv(text: &str, weight: Weight) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next().map(str::trim) {
            Some("r,maxmod,weighted") => {}
            other => return Err(Error::Parse(format!("bad profile header {other:?}"))),
        }
        let mut points = Vec::new();
        for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let parse = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("row {}: {e}", i + 1)));
            let [r, maxmod, weighted] = fields.as_slice() else {
                return Err(Error::Parse(format!("row {} has {} fields", i + 1, fields.len())));
            };
            let (r, maxmod, weighted) = (parse(r)?, parse(maxmod)?, parse(weighted)?);
            check_radius(r)?;
            if !(maxmod >= 0.0 && maxmod.is_finite()) {
                return Err(Error::Parse(format!("row {}: bad maxmod {maxmod}", i + 1)));
            }
            let expected = weight.value(r) * maxmod;
            if (expected - weighted).abs() > 1e-12 * expected.abs().max(1e-300) {
                return Err(Error::Parse(format!("row {}: weighted column disagrees with weight", i + 1)));
            }
            if let Some(prev) = points.last().map(|p: &ProfilePoint| p.r) {
                if r <= prev {
                    return Err(Error::Parse(format!("row {}: radii not increasing", i + 1)));
                }
            }
            points.push(ProfilePoint { r, maxmod, level: dyadic_level(r) });
        }
        Ok(Self { weight, points })
    }
}

fn dyadic_level(r: f64) -> Option<u32> {
    (1..=52).find(|&k| 1.0 - 0.5f64.powi(k) == r).map(|k| k as u32)
}

/// Samples `f` on every grid radius. Radii are processed in parallel; the
/// result does not depend on scheduling.
pub fn radial_profile<F: DiscFunction + ?Sized>(f: &F, weight: Weight, grid: &RadialGrid) -> Result<RadialProfile> {
    let angles = grid.angles();
    let points = grid
        .radii()
        .into_par_iter()
        .map(|(r, level)| Ok(ProfilePoint { r, maxmod: max_on_circle(f, r, &angles)?, level }))
        .collect::<Result<Vec<_>>>()?;
    Ok(RadialProfile { weight, points })
}

/// Lower bound for `sup_z v(|z|) |f(z)|` over the grid.
pub fn weighted_sup_estimate<F: DiscFunction + ?Sized>(f: &F, weight: Weight, grid: &RadialGrid) -> Result<f64> {
    Ok(radial_profile(f, weight, grid)?.sup_weighted())
}

/// `|f(0)| + sup (1 - |z|) |f'(z)|`, sampled.
pub fn bloch_norm_estimate(e: &AnalyticExpr, grid: &RadialGrid) -> Result<f64> {
    let at_origin = e.eval(Complex64::new(0.0, 0.0))?.norm();
    Ok(at_origin + weighted_sup_estimate(&e.derivative(), Weight::Power { gamma: 1.0 }, grid)?)
}

/// Least-squares fit of a log-profile against `k log 2` over the dyadic tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    /// Slope; for the max-modulus this is the growth exponent.
    pub exponent: f64,
    pub intercept: f64,
    /// Largest absolute deviation of a log value from the fitted line.
    pub residual: f64,
    pub window: usize,
}

fn fit_window(samples: &[(u32, f64)], window: usize) -> Result<GrowthFit> {
    if window < 3 {
        return Err(Error::DegenerateProfile(format!("window {window} < 3")));
    }
    if samples.len() < window {
        return Err(Error::DegenerateProfile(format!("{} dyadic points, window {window}", samples.len())));
    }
    let used = &samples[samples.len() - window..];
    if let Some((k, v)) = used.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::DegenerateProfile(format!("value {v} at level {k}")));
    }
    let xs: Vec<f64> = used.iter().map(|(k, _)| *k as f64 * LN_2).collect();
    let ys: Vec<f64> = used.iter().map(|(_, v)| v.ln()).collect();
    let n = window as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).abs()).fold(0.0, f64::max);
    Ok(GrowthFit { exponent: slope, intercept, residual, window })
}

/// Growth exponent: slope of `log maxmod` over the last `window` dyadic
/// points.
pub fn growth_exponent(profile: &RadialProfile, window: usize) -> Result<GrowthFit> {
    let samples: Vec<(u32, f64)> = profile.tail().into_iter().map(|(k, p)| (k, p.maxmod)).collect();
    fit_window(&samples, window)
}

/// Slope of `log(v(r) maxmod)`; equals the growth exponent minus `γ` for a
/// power weight.
pub fn weighted_tail_fit(profile: &RadialProfile, window: usize) -> Result<GrowthFit> {
    let samples: Vec<(u32, f64)> =
        profile.tail().into_iter().map(|(k, p)| (k, profile.weight.value(p.r) * p.maxmod)).collect();
    fit_window(&samples, window)
}

/// Cutoffs turning the asymptotic definitions into a finite procedure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassifyTolerances {
    /// Last weighted value below this fraction of the overall maximum counts as vanishing.
    pub zero_level: f64,
    /// Relative half-width of the band for a bounded, non-vanishing tail.
    pub band: f64,
    /// Minimum |slope| of the weighted log-profile that counts as decay or growth.
    pub slope: f64,
    /// Required ratio between the last and first dyadic weighted values for growth.
    pub growth_ratio: f64,
    /// Number of trailing dyadic points used for slopes and bands.
    pub window: usize,
}

impl Default for ClassifyTolerances {
    fn default() -> Self {
        Self { zero_level: 0.05, band: 0.2, slope: 0.2, growth_ratio: 2.0, window: 6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Membership {
    /// In the little-oh space `A_0^{-γ}`.
    InA0,
    /// Bounded weighted profile that does not vanish.
    #[serde(rename = "InA_NotA0")]
    InANotA0,
    NotInA,
    Inconclusive,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::InA0 => "InA0",
            Self::InANotA0 => "InA_NotA0",
            Self::NotInA => "NotInA",
            Self::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub membership: Membership,
    /// Slope of the weighted log-profile over the window; `None` for the zero function.
    pub slope: Option<f64>,
    /// `(r_k, v(r_k) maxmod(r_k))` over the dyadic tail.
    pub tail: Vec<(f64, f64)>,
    pub profile: RadialProfile,
}

/// Classifies a weighted profile.
///
/// On the trailing window of dyadic weighted values `w_k`, with fitted
/// log-slope `s`:
/// * `NotInA` if `s ≥ slope` and `w_K > growth_ratio · w_1`;
/// * `InA0` if the window is non-increasing and either `s ≤ -slope` or
///   `w_K < zero_level · max w`;
/// * `InA_NotA0` if `|s| < slope` and the window lies within `±band` of its mean;
/// * `Inconclusive` otherwise.
pub fn classify_profile(profile: RadialProfile, tol: &ClassifyTolerances) -> Result<Classification> {
    let weighted_tail: Vec<(f64, f64)> =
        profile.tail().into_iter().map(|(_, p)| (p.r, profile.weight.value(p.r) * p.maxmod)).collect();
    if profile.points.iter().all(|p| p.maxmod == 0.0) {
        return Ok(Classification { membership: Membership::InA0, slope: None, tail: weighted_tail, profile });
    }
    let fit = match weighted_tail_fit(&profile, tol.window) {
        Ok(fit) => fit,
        Err(Error::DegenerateProfile(_)) => {
            return Ok(Classification { membership: Membership::Inconclusive, slope: None, tail: weighted_tail, profile })
        }
        Err(e) => return Err(e),
    };
    let s = fit.exponent;
    let values: Vec<f64> = weighted_tail.iter().map(|(_, w)| *w).collect();
    let window = &values[values.len() - tol.window..];
    let first = values[0];
    let last = *values.last().expect("window is non-empty");
    let overall = profile.sup_weighted();
    let non_increasing = window.windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-9));
    let level = window.iter().sum::<f64>() / window.len() as f64;
    let in_band = level > 0.0 && window.iter().all(|w| (w - level).abs() <= tol.band * level);

    let membership = if s >= tol.slope && last > tol.growth_ratio * first {
        Membership::NotInA
    } else if non_increasing && (s <= -tol.slope || last < tol.zero_level * overall) {
        Membership::InA0
    } else if s.abs() < tol.slope && in_band {
        Membership::InANotA0
    } else {
        Membership::Inconclusive
    };
    Ok(Classification { membership, slope: Some(s), tail: weighted_tail, profile })
}

/// Membership of `f` in `A^{-γ}` / `A_0^{-γ}`.
pub fn classify_membership<F: DiscFunction + ?Sized>(
    f: &F,
    gamma: f64,
    grid: &RadialGrid,
    tol: &ClassifyTolerances,
) -> Result<Classification> {
    classify_profile(radial_profile(f, Weight::power(gamma)?, grid)?, tol)
}

/// Which optimal domain: `[V_g, A^{-γ}]` or `[V_g, A_0^{-γ}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    Full,
    LittleOh,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainMembership {
    /// `None` when the underlying classification is inconclusive.
    pub member: Option<bool>,
    pub classification: Classification,
}

/// `f ∈ [V_g, A^{-γ}]` iff `f g' ∈ A^{-(γ+1)}` (and likewise for `A_0`).
pub fn odomain_membership<G, F>(
    gprime: &G,
    f: &F,
    gamma: f64,
    variant: Variant,
    grid: &RadialGrid,
    tol: &ClassifyTolerances,
) -> Result<DomainMembership>
where
    G: DiscFunction + ?Sized,
    F: DiscFunction + ?Sized,
{
    let classification = classify_membership(&ProductOf(f, gprime), gamma + 1.0, grid, tol)?;
    let member = match (classification.membership, variant) {
        (Membership::Inconclusive, _) => None,
        (Membership::InA0, _) => Some(true),
        (Membership::InANotA0, Variant::Full) => Some(true),
        (Membership::InANotA0, Variant::LittleOh) => Some(false),
        (Membership::NotInA, _) => Some(false),
    };
    Ok(DomainMembership { member, classification })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormMethod {
    /// `sup (1-|z|)^γ |V_g f(z)|` with `V_g f` by quadrature.
    PathIntegral,
    /// `sup (1-|z|)^{γ+1} |f(z) g'(z)|`, equivalent up to an unknown constant.
    Proxy,
}

/// Estimate of the optimal-domain norm `‖V_g f‖_{-γ}`.
pub fn odomain_norm_estimate<G, F>(gprime: &G, f: &F, gamma: f64, grid: &RadialGrid, method: NormMethod) -> Result<f64>
where
    G: DiscFunction + ?Sized,
    F: DiscFunction + ?Sized,
{
    match method {
        NormMethod::Proxy => weighted_sup_estimate(&ProductOf(f, gprime), Weight::power(gamma + 1.0)?, grid),
        NormMethod::PathIntegral => {
            let weight = Weight::power(gamma)?;
            let angles = grid.angles();
            let per_radius = grid
                .radii()
                .into_par_iter()
                .map(|(r, _)| {
                    let mut best = 0.0f64;
                    for &theta in &angles {
                        let z = Complex64::from_polar(r, theta);
                        best = best.max(path_integral_volterra(gprime, f, z)?.norm());
                    }
                    Ok(weight.value(r) * best)
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(per_radius.into_iter().fold(0.0, f64::max))
        }
    }
}
