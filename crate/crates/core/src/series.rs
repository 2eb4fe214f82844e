//! Truncated Taylor series with complex coefficients.
//!
//! A [`TruncatedSeries`] of degree `N` stands for the analytic function
//! `f(z) = c_0 + c_1 z + ... + c_N z^N`. Every operation either keeps the
//! degree or truncates to an explicit cap; nothing silently grows past it.
//! Binary operations zero-pad the shorter operand.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default truncation degree.
pub const DEFAULT_DEGREE: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients. An empty vector is the zero
    /// series of degree 0.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if let Some(index) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self::from_finite(coeffs))
    }

    pub(crate) fn from_finite(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        debug_assert!(coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0); degree + 1] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_finite(vec![c])
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[n] = Complex64::new(1.0, 0.0);
        s
    }

    /// Taylor series of `1/(1-z)` to degree `n`.
    pub fn geometric(degree: usize) -> Self {
        Self { coeffs: vec![Complex64::new(1.0, 0.0); degree + 1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `n`, zero beyond the degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Zero-pads or cuts to exactly `degree`.
    pub fn with_degree(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_finite(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Largest coefficient-wise modulus of `self - other` (zero-padded).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).map(|n| (self.coeff(n) - other.coeff(n)).norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation; requires `|z| < 1`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= 1.0 {
            return Err(Error::Domain { re: z.re, im: z.im });
        }
        Ok(self.horner(z))
    }

    pub(crate) fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `S_M f`: the coefficients up to `min(M, N)`.
    pub fn partial_sum(&self, m: usize) -> Self {
        let keep = m.min(self.degree()) + 1;
        Self { coeffs: self.coeffs[..keep].to_vec() }
    }

    /// `Σ_{n>m} |c_n| r^n`, a bound on `|f(z) - S_m f(z)|` for `|z| ≤ r`.
    pub fn tail_bound(&self, m: usize, r: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(m + 1)
            .map(|(n, c)| c.norm() * r.powi(n as i32))
            .sum()
    }
}

/// Sum up to the larger degree.
pub fn add(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let len = a.coeffs.len().max(b.coeffs.len());
    TruncatedSeries::from_finite((0..len).map(|n| a.coeff(n) + b.coeff(n)).collect())
}

pub fn sub(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let len = a.coeffs.len().max(b.coeffs.len());
    TruncatedSeries::from_finite((0..len).map(|n| a.coeff(n) - b.coeff(n)).collect())
}

/// `α a + β b`.
pub fn linear_combination(
    alpha: Complex64,
    a: &TruncatedSeries,
    beta: Complex64,
    b: &TruncatedSeries,
) -> TruncatedSeries {
    let len = a.coeffs.len().max(b.coeffs.len());
    TruncatedSeries::from_finite((0..len).map(|n| alpha * a.coeff(n) + beta * b.coeff(n)).collect())
}

/// Cauchy product truncated to degree `cap`: `c_n = Σ_{k≤n} a_k b_{n-k}`.
pub fn cauchy_product(a: &TruncatedSeries, b: &TruncatedSeries, cap: usize) -> TruncatedSeries {
    let mut out = vec![Complex64::new(0.0, 0.0); cap + 1];
    for (i, &ai) in a.coeffs.iter().enumerate().take(cap + 1) {
        if ai == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &bj) in b.coeffs.iter().enumerate().take(cap + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    TruncatedSeries::from_finite(out)
}

/// Product degree that loses no terms.
pub fn full_product_degree(a: &TruncatedSeries, b: &TruncatedSeries) -> usize {
    a.degree() + b.degree()
}

/// Reciprocal series by long division, truncated to `cap`.
pub fn reciprocal(a: &TruncatedSeries, cap: usize) -> Result<TruncatedSeries> {
    let c0 = a.coeff(0);
    if c0.norm() < 1e-300 {
        return Err(Error::DivisionByZero { modulus: c0.norm() });
    }
    let mut out: Vec<Complex64> = Vec::with_capacity(cap + 1);
    out.push(c0.inv());
    for n in 1..=cap {
        let acc: Complex64 = (1..=n.min(a.degree())).map(|k| a.coeff(k) * out[n - k]).sum();
        out.push(-acc / c0);
    }
    TruncatedSeries::new(out)
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            re: self.coeffs.iter().map(|c| c.re).collect(),
            im: self.coeffs.iter().map(|c| c.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.re.len() != repr.im.len() {
            return Err(serde::de::Error::custom(format!(
                "re and im lengths differ ({} vs {})",
                repr.re.len(),
                repr.im.len()
            )));
        }
        let coeffs = repr.re.into_iter().zip(repr.im).map(|(re, im)| Complex64::new(re, im)).collect();
        TruncatedSeries::new(coeffs).map_err(serde::de::Error::custom)
    }
}
