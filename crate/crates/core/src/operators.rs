//! Coefficient-domain operators on truncated series.
//!
//! Symbols enter only through their derivative `g'`. With
//! `p = f · g'` (Cauchy product):
//!
//! * `V_g f`: `out_0 = 0`, `out_n = p_{n-1} / n`
//! * `T_g f`: `out_n = p_n / (n + 1)`
//! * `C f`  : `T_g f` with `g' = 1/(1 - z)`, i.e. prefix sums over `n + 1`
//!
//! Each operator takes an explicit output degree `cap` where the exact
//! result would be an infinite series; the `natural_*` helpers give the cap
//! that is exact for polynomial inputs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{DiscFunction, Function};
use crate::quadrature::{self, Tolerance};
use crate::series::{cauchy_product, TruncatedSeries};

/// `f(0)` above this modulus violates the backshift precondition.
pub const BACKSHIFT_ORIGIN_TOL: f64 = 1e-12;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `V_g f = ∫_0^z f g'`, truncated to degree `cap`.
pub fn volterra(gprime: &TruncatedSeries, f: &TruncatedSeries, cap: usize) -> TruncatedSeries {
    if cap == 0 {
        return TruncatedSeries::zero(0);
    }
    let p = cauchy_product(f, gprime, cap - 1);
    let mut out = Vec::with_capacity(cap + 1);
    out.push(zero());
    out.extend(p.coeffs().iter().enumerate().map(|(k, c)| c / ((k + 1) as f64)));
    TruncatedSeries::from_finite(out)
}

/// Degree of `V_g f` for polynomial `f` and `g'`.
pub fn natural_volterra_degree(gprime: &TruncatedSeries, f: &TruncatedSeries) -> usize {
    f.degree() + gprime.degree() + 1
}

/// `T_g f = (1/z) ∫_0^z f g'`, truncated to degree `cap`.
///
/// The value at the origin is the analytic one, `f(0) g'(0)`.
pub fn averaged(gprime: &TruncatedSeries, f: &TruncatedSeries, cap: usize) -> TruncatedSeries {
    let p = cauchy_product(f, gprime, cap);
    TruncatedSeries::from_finite(p.coeffs().iter().enumerate().map(|(n, c)| c / ((n + 1) as f64)).collect())
}

pub fn natural_averaged_degree(gprime: &TruncatedSeries, f: &TruncatedSeries) -> usize {
    f.degree() + gprime.degree()
}

/// Both candidate values of `T_g f` at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OriginValues {
    /// `f(0) g'(0)`, the limit of `(1/z) ∫_0^z f g'`.
    pub analytic: Complex64,
    /// `f(0)`, the value fixed by the defining convention.
    pub convention: Complex64,
}

impl OriginValues {
    pub fn differ(&self) -> bool {
        (self.analytic - self.convention).norm() > 1e-15
    }
}

pub fn averaged_origin_values(gprime: &TruncatedSeries, f: &TruncatedSeries) -> OriginValues {
    OriginValues { analytic: f.coeff(0) * gprime.coeff(0), convention: f.coeff(0) }
}

/// Cesàro operator: `out_n = (f_0 + ... + f_n) / (n + 1)`.
pub fn cesaro(f: &TruncatedSeries, cap: usize) -> TruncatedSeries {
    let mut sum = zero();
    TruncatedSeries::from_finite(
        (0..=cap)
            .map(|n| {
                sum += f.coeff(n);
                sum / ((n + 1) as f64)
            })
            .collect(),
    )
}

/// Inverse Cesàro operator: `out_n = (n + 1) f_n - n f_{n-1}`.
///
/// Undoes the prefix-sum averaging; for `f = z^n` it returns
/// `(n + 1)(1 - z) z^n` when `cap ≥ n + 1`.
pub fn cesaro_inverse(f: &TruncatedSeries, cap: usize) -> TruncatedSeries {
    TruncatedSeries::from_finite(
        (0..=cap)
            .map(|n| {
                let prev = if n == 0 { zero() } else { f.coeff(n - 1) * (n as f64) };
                f.coeff(n) * ((n + 1) as f64) - prev
            })
            .collect(),
    )
}

/// `D f = f'`, degree `N - 1` (degree 0 for constants).
pub fn differentiate(f: &TruncatedSeries) -> TruncatedSeries {
    if f.degree() == 0 {
        return TruncatedSeries::zero(0);
    }
    TruncatedSeries::from_finite(f.coeffs().iter().enumerate().skip(1).map(|(n, c)| c * (n as f64)).collect())
}

/// `J f = ∫_0^z f`, degree `N + 1`.
pub fn integrate(f: &TruncatedSeries) -> TruncatedSeries {
    let mut out = Vec::with_capacity(f.degree() + 2);
    out.push(zero());
    out.extend(f.coeffs().iter().enumerate().map(|(k, c)| c / ((k + 1) as f64)));
    TruncatedSeries::from_finite(out)
}

/// `S f = z f`, degree `N + 1`.
pub fn shift(f: &TruncatedSeries) -> TruncatedSeries {
    let mut out = Vec::with_capacity(f.degree() + 2);
    out.push(zero());
    out.extend_from_slice(f.coeffs());
    TruncatedSeries::from_finite(out)
}

/// `T f = f / z` on functions vanishing at the origin, degree `N - 1`.
pub fn backshift(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.coeff(0).norm() > BACKSHIFT_ORIGIN_TOL {
        return Err(Error::Precondition(format!(
            "backshift needs f(0) = 0, got |f(0)| = {}",
            f.coeff(0).norm()
        )));
    }
    if f.degree() == 0 {
        return Ok(TruncatedSeries::zero(0));
    }
    Ok(TruncatedSeries::from_finite(f.coeffs()[1..].to_vec()))
}

/// `M_h f = h f`, truncated to degree `cap`.
pub fn multiply(h: &TruncatedSeries, f: &TruncatedSeries, cap: usize) -> TruncatedSeries {
    cauchy_product(h, f, cap)
}

/// `∫_0^z f g'` along the segment `[0, z]` by adaptive Gauss–Legendre
/// quadrature.
pub fn path_integral_volterra<G, F>(gprime: &G, f: &F, z: Complex64) -> Result<Complex64>
where
    G: DiscFunction + ?Sized,
    F: DiscFunction + ?Sized,
{
    if z.norm() >= 1.0 {
        return Err(Error::Domain { re: z.re, im: z.im });
    }
    quadrature::segment_integral(|x| Ok(f.value(x)? * gprime.value(x)?), z, Tolerance::default())
}

/// Closed form of `V_{g0} f` and `C f` for a polynomial `f`, where
/// `g0 = -Log(1 - z)`.
///
/// Writing `f(ξ) - f(1) = (ξ - 1) h(ξ)` gives
/// `V_{g0} f = f(1) (-Log(1 - z)) - J h`, valid up to the boundary where
/// truncated coefficients are useless.
#[derive(Debug, Clone)]
pub struct LogSymbolVolterra {
    log_coeff: Complex64,
    polynomial: TruncatedSeries,
    origin: Complex64,
}

impl LogSymbolVolterra {
    pub fn new(f: &TruncatedSeries) -> Self {
        let c = f.coeffs();
        let n = f.degree();
        // synthetic division by (ξ - 1)
        let mut h = vec![zero(); n.max(1)];
        if n >= 1 {
            h[n - 1] = c[n];
            for k in (1..n).rev() {
                h[k - 1] = c[k] + h[k];
            }
        }
        let f_at_one = c[0] + if n >= 1 { h[0] } else { zero() };
        let h = TruncatedSeries::from_finite(h);
        Self { log_coeff: f_at_one, polynomial: integrate(&h).scale(Complex64::new(-1.0, 0.0)), origin: c[0] }
    }

    pub fn volterra(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= 1.0 {
            return Err(Error::Domain { re: z.re, im: z.im });
        }
        let log = -(Complex64::new(1.0, 0.0) - z).ln();
        Ok(self.log_coeff * log + self.polynomial.horner(z))
    }

    /// `C f(z)`; `f(0)` at the origin.
    pub fn cesaro(&self, z: Complex64) -> Result<Complex64> {
        if z == zero() {
            return Ok(self.origin);
        }
        Ok(self.volterra(z)? / z)
    }
}

/// Operator selection for the `apply` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum OperatorSpec {
    Volterra { gprime: Function },
    Averaged { gprime: Function },
    Cesaro,
    CesaroInverse,
    Differentiate,
    Integrate,
    MultiplyBy { h: Function },
    Shift,
    BackShift,
}

impl OperatorSpec {
    /// Applies the operator to a polynomial.
    ///
    /// Series symbols give the exact polynomial result. Expression symbols
    /// are expanded to `degree` and the result is truncated there.
    pub fn apply(&self, f: &TruncatedSeries, degree: usize) -> Result<TruncatedSeries> {
        Ok(match self {
            Self::Volterra { gprime } => match gprime.exact_series() {
                Some(g) => volterra(&g, f, natural_volterra_degree(&g, f)),
                None => volterra(&gprime.taylor(degree)?, f, degree),
            },
            Self::Averaged { gprime } => match gprime.exact_series() {
                Some(g) => averaged(&g, f, natural_averaged_degree(&g, f)),
                None => averaged(&gprime.taylor(degree)?, f, degree),
            },
            Self::Cesaro => cesaro(f, f.degree()),
            Self::CesaroInverse => cesaro_inverse(f, f.degree() + 1),
            Self::Differentiate => differentiate(f),
            Self::Integrate => integrate(f),
            Self::MultiplyBy { h } => match h.exact_series() {
                Some(h) => multiply(&h, f, h.degree() + f.degree()),
                None => multiply(&h.taylor(degree)?, f, degree),
            },
            Self::Shift => shift(f),
            Self::BackShift => backshift(f)?,
        })
    }

    /// The `T_g` origin values, when this is an averaged operator.
    pub fn origin_values(&self, f: &TruncatedSeries, degree: usize) -> Result<Option<OriginValues>> {
        match self {
            Self::Averaged { gprime } => Ok(Some(averaged_origin_values(&gprime.taylor(degree.max(1))?, f))),
            _ => Ok(None),
        }
    }
}
