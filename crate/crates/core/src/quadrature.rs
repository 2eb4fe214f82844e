//! Adaptive Gauss–Legendre quadrature along straight segments in the plane.

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

pub const ORDER: usize = 16;
/// Maximum bisection depth before giving up.
pub const MAX_LEVELS: u32 = 20;

/// Nodes and weights on `[-1, 1]`.
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_n` by Newton's method from Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Rule applied on `[a, b]` of the real parameter.
    fn apply<F: Fn(f64) -> Result<Complex64>>(&self, f: &F, a: f64, b: f64) -> Result<Complex64> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x)? * *w;
        }
        Ok(acc * half)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

static RULE: Lazy<GaussLegendre> = Lazy::new(|| GaussLegendre::new(ORDER));

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Absolute agreement required between a panel and its two halves,
    /// scaled by the panel's share of `[0, 1]`.
    pub abs: f64,
    /// Relative agreement, for integrands too large for `abs` to be meaningful.
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-11, rel: 1e-13 }
    }
}

/// `∫_0^1 f(t) dt` by recursive panel halving.
pub fn integrate_unit<F>(f: F, tol: Tolerance) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let whole = RULE.apply(&f, 0.0, 1.0)?;
    refine(&f, 0.0, 1.0, whole, tol, 0)
}

fn refine<F>(f: &F, a: f64, b: f64, whole: Complex64, tol: Tolerance, level: u32) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mid = 0.5 * (a + b);
    let left = RULE.apply(f, a, mid)?;
    let right = RULE.apply(f, mid, b)?;
    let halves = left + right;
    let diff = (halves - whole).norm();
    if diff <= tol.abs * (b - a) || diff <= tol.rel * halves.norm() {
        return Ok(halves);
    }
    if level + 1 >= MAX_LEVELS {
        return Err(Error::NonConvergence { levels: MAX_LEVELS });
    }
    Ok(refine(f, a, mid, left, tol, level + 1)? + refine(f, mid, b, right, tol, level + 1)?)
}

/// `∫` of `h` along the segment from `0` to `z`.
pub fn segment_integral<F>(h: F, z: Complex64, tol: Tolerance) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    Ok(integrate_unit(|t| h(z * t), tol)? * z)
}
