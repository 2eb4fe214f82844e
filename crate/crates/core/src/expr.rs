//! Closed-form analytic expressions on the unit disc.
//!
//! Truncated polynomials cannot see boundary growth, so membership tests
//! work with expression trees built from constants, `z`, sums, products,
//! principal powers `(1 - a z)^ρ`, logarithms `-Log(1 - a z)` and
//! reciprocals. Every linear factor keeps `|a| ≤ 1`, which puts `1 - a z`
//! in the open right half-plane for `|z| < 1` and keeps the principal
//! branch analytic on the disc.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::series::{self, TruncatedSeries};

/// Slack on `|a| ≤ 1` so that `e^{iθ}` built from floats is accepted.
const UNIT_SLACK: f64 = 1e-12;
/// Below this modulus a reciprocal child counts as vanishing.
pub const SINGULAR_MODULUS: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticExpr {
    Const(Complex64),
    /// The identity function `z`.
    Var,
    Sum(Vec<AnalyticExpr>),
    Product(Vec<AnalyticExpr>),
    /// `(1 - a z)^rho`, principal branch.
    LinPow { a: Complex64, rho: f64 },
    /// `-Log(1 - a z)`, principal branch.
    LinLog { a: Complex64 },
    /// `1 / child`. Evaluation is refused unless `nonvanishing` certifies that
    /// the child has no zeros on the disc.
    Recip { child: Box<AnalyticExpr>, nonvanishing: bool },
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check_linear_coefficient(a: Complex64) -> Result<()> {
    if !(a.re.is_finite() && a.im.is_finite()) || a.norm() > 1.0 + UNIT_SLACK {
        return Err(Error::BadParams {
            name: "linear factor".into(),
            reason: format!("|a| = {} exceeds 1", a.norm()),
        });
    }
    Ok(())
}

impl AnalyticExpr {
    pub fn constant(value: f64) -> Self {
        Self::Const(c(value))
    }

    pub fn lin_pow(a: Complex64, rho: f64) -> Result<Self> {
        check_linear_coefficient(a)?;
        if !rho.is_finite() {
            return Err(Error::BadParams { name: "linpow".into(), reason: "non-finite exponent".into() });
        }
        Ok(Self::LinPow { a, rho })
    }

    pub fn lin_log(a: Complex64) -> Result<Self> {
        check_linear_coefficient(a)?;
        Ok(Self::LinLog { a })
    }

    /// Reciprocal without a zero-free certificate; `eval` will refuse it.
    pub fn recip(child: AnalyticExpr) -> Self {
        Self::Recip { child: Box::new(child), nonvanishing: false }
    }

    /// Reciprocal of a catalog expression known to be zero-free on the disc.
    pub(crate) fn recip_certified(child: AnalyticExpr) -> Self {
        Self::Recip { child: Box::new(child), nonvanishing: true }
    }

    /// `z^n` as a product of `n` copies of `z`.
    pub fn monomial(n: usize) -> Self {
        match n {
            0 => Self::constant(1.0),
            1 => Self::Var,
            _ => Self::Product(vec![Self::Var; n]),
        }
    }

    pub fn times(self, other: AnalyticExpr) -> Self {
        match self {
            Self::Product(mut factors) => {
                factors.push(other);
                Self::Product(factors)
            }
            first => Self::Product(vec![first, other]),
        }
    }

    pub fn plus(self, other: AnalyticExpr) -> Self {
        match self {
            Self::Sum(mut terms) => {
                terms.push(other);
                Self::Sum(terms)
            }
            first => Self::Sum(vec![first, other]),
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= 1.0 {
            return Err(Error::Domain { re: z.re, im: z.im });
        }
        self.eval_inner(z)
    }

    fn eval_inner(&self, z: Complex64) -> Result<Complex64> {
        Ok(match self {
            Self::Const(v) => *v,
            Self::Var => z,
            Self::Sum(terms) => {
                let mut acc = c(0.0);
                for t in terms {
                    acc += t.eval_inner(z)?;
                }
                acc
            }
            Self::Product(factors) => {
                let mut acc = c(1.0);
                for f in factors {
                    acc *= f.eval_inner(z)?;
                }
                acc
            }
            Self::LinPow { a, rho } => {
                check_linear_coefficient(*a)?;
                if *rho == 0.0 {
                    c(1.0)
                } else {
                    (c(1.0) - a * z).powf(*rho)
                }
            }
            Self::LinLog { a } => {
                check_linear_coefficient(*a)?;
                -(c(1.0) - a * z).ln()
            }
            Self::Recip { child, nonvanishing } => {
                if !nonvanishing {
                    return Err(Error::Uncertified);
                }
                let v = child.eval_inner(z)?;
                if v.norm() < SINGULAR_MODULUS {
                    return Err(Error::Singularity { modulus: v.norm() });
                }
                v.inv()
            }
        })
    }

    /// Symbolic derivative.
    pub fn derivative(&self) -> Self {
        match self {
            Self::Const(_) => Self::constant(0.0),
            Self::Var => Self::constant(1.0),
            Self::Sum(terms) => Self::Sum(terms.iter().map(Self::derivative).collect()),
            Self::Product(factors) => {
                let terms = (0..factors.len())
                    .map(|i| {
                        let mut f = factors.clone();
                        f[i] = factors[i].derivative();
                        Self::Product(f)
                    })
                    .collect();
                Self::Sum(terms)
            }
            Self::LinPow { a, rho } => {
                if *rho == 0.0 {
                    Self::constant(0.0)
                } else {
                    Self::Product(vec![Self::Const(-a * rho), Self::LinPow { a: *a, rho: rho - 1.0 }])
                }
            }
            Self::LinLog { a } => {
                let pole = Self::LinPow { a: *a, rho: -1.0 };
                if *a == c(1.0) {
                    pole
                } else {
                    Self::Product(vec![Self::Const(*a), pole])
                }
            }
            Self::Recip { child, nonvanishing } => {
                let inv = Self::Recip { child: child.clone(), nonvanishing: *nonvanishing };
                Self::Product(vec![Self::constant(-1.0), child.derivative(), inv.clone(), inv])
            }
        }
    }

    /// The degree when the expression is a polynomial, in which case
    /// [`taylor`](Self::taylor) at that degree is exact.
    pub fn polynomial_degree(&self) -> Option<usize> {
        match self {
            Self::Const(_) => Some(0),
            Self::Var => Some(1),
            Self::Sum(terms) => terms.iter().try_fold(0, |m, t| t.polynomial_degree().map(|d| m.max(d))),
            Self::Product(factors) => factors.iter().try_fold(0, |m, f| f.polynomial_degree().map(|d| m + d)),
            Self::LinPow { a, .. } | Self::LinLog { a } if *a == c(0.0) => Some(0),
            Self::LinPow { rho, .. } if *rho >= 0.0 && rho.fract() == 0.0 => Some(*rho as usize),
            Self::LinPow { .. } | Self::LinLog { .. } | Self::Recip { .. } => None,
        }
    }

    /// Taylor coefficients at the origin up to degree `degree`.
    pub fn taylor(&self, degree: usize) -> Result<TruncatedSeries> {
        Ok(match self {
            Self::Const(v) => TruncatedSeries::constant(*v).with_degree(degree),
            Self::Var => TruncatedSeries::monomial(1).with_degree(degree),
            Self::Sum(terms) => {
                let mut acc = TruncatedSeries::zero(degree);
                for t in terms {
                    acc = series::add(&acc, &t.taylor(degree)?);
                }
                acc
            }
            Self::Product(factors) => {
                let mut acc = TruncatedSeries::constant(c(1.0)).with_degree(degree);
                for f in factors {
                    acc = series::cauchy_product(&acc, &f.taylor(degree)?, degree);
                }
                acc
            }
            Self::LinPow { a, rho } => {
                // C(ρ, n) (-a)^n via C(ρ, n) = C(ρ, n-1) (ρ - n + 1) / n
                let mut coeffs = Vec::with_capacity(degree + 1);
                let mut term = c(1.0);
                coeffs.push(term);
                for n in 1..=degree {
                    term = term * (rho - (n as f64) + 1.0) / (n as f64) * (-a);
                    coeffs.push(term);
                }
                TruncatedSeries::new(coeffs)?
            }
            Self::LinLog { a } => {
                let mut coeffs = vec![c(0.0)];
                let mut power = c(1.0);
                for n in 1..=degree {
                    power *= a;
                    coeffs.push(power / (n as f64));
                }
                TruncatedSeries::new(coeffs)?
            }
            Self::Recip { child, .. } => series::reciprocal(&child.taylor(degree)?, degree)?,
        })
    }

    pub fn to_json(&self) -> Value {
        let pair = |v: &Complex64| json!([v.re, v.im]);
        match self {
            Self::Const(v) => json!(["const", pair(v)]),
            Self::Var => json!(["var"]),
            Self::Sum(terms) => {
                let mut items = vec![json!("sum")];
                items.extend(terms.iter().map(Self::to_json));
                Value::Array(items)
            }
            Self::Product(factors) => {
                let mut items = vec![json!("product")];
                items.extend(factors.iter().map(Self::to_json));
                Value::Array(items)
            }
            Self::LinPow { a, rho } => json!(["linpow", {"a": pair(a), "rho": rho}]),
            Self::LinLog { a } => json!(["linlog", {"a": pair(a)}]),
            Self::Recip { child, nonvanishing } => {
                json!(["recip", {"nonvanishing": nonvanishing}, child.to_json()])
            }
        }
    }

    /// Parses the s-expression form produced by [`to_json`](Self::to_json).
    ///
    /// Parsed reciprocals never carry a certificate: only catalog
    /// constructors may assert that a child is zero-free.
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg}: {value}"));
        let items = value.as_array().ok_or_else(|| bad("expected an array"))?;
        let tag = items.first().and_then(Value::as_str).ok_or_else(|| bad("missing node tag"))?;
        let complex = |v: Option<&Value>| -> Result<Complex64> {
            let v = v.ok_or_else(|| bad("missing complex value"))?;
            if let Some(x) = v.as_f64() {
                return Ok(c(x));
            }
            match v.as_array().map(|a| a.as_slice()) {
                Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                    (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                    _ => Err(bad("complex parts must be numbers")),
                },
                _ => Err(bad("complex value must be [re, im]")),
            }
        };
        match tag {
            "const" => Ok(Self::Const(complex(items.get(1))?)),
            "var" => Ok(Self::Var),
            "sum" => Ok(Self::Sum(items[1..].iter().map(Self::from_json).collect::<Result<_>>()?)),
            "product" => Ok(Self::Product(items[1..].iter().map(Self::from_json).collect::<Result<_>>()?)),
            "linpow" => {
                let params = items.get(1).ok_or_else(|| bad("linpow needs parameters"))?;
                let rho = params.get("rho").and_then(Value::as_f64).ok_or_else(|| bad("linpow needs rho"))?;
                Self::lin_pow(complex(params.get("a"))?, rho)
            }
            "linlog" => {
                let params = items.get(1).ok_or_else(|| bad("linlog needs parameters"))?;
                Self::lin_log(complex(params.get("a"))?)
            }
            "recip" => {
                let child = items.last().filter(|_| items.len() >= 2).ok_or_else(|| bad("recip needs a child"))?;
                Ok(Self::recip(Self::from_json(child)?))
            }
            other => Err(Error::Parse(format!("unknown node `{other}`"))),
        }
    }
}

impl Serialize for AnalyticExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AnalyticExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        Self::from_json(&value).map_err(serde::de::Error::custom)
    }
}

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: &[&str] = &[
    "g0",
    "monomial",
    "e1_witness",
    "e1_fgprime",
    "pow_witness",
    "ray_pow",
    "propJ_witness",
    "inv_g0prime",
];

/// Witness functions and symbols by name.
///
/// | name | params | function |
/// |---|---|---|
/// | `g0` | – | `-Log(1 - z)` |
/// | `monomial` | `n` | `z^n` |
/// | `e1_witness` | `γ`, optional `w` (default −1) | `(1 - z)(1 - w̄z)^{-(γ+1)}` |
/// | `e1_fgprime` | `γ`, optional `w` | `(1 - w̄z)^{-(γ+1)}` |
/// | `pow_witness` | `α` | `(1 - z)^{-α}` |
/// | `ray_pow` | `α`, `w` | `(1 - w̄z)^{-α}` |
/// | `propJ_witness` | `γ` | `(1 - z)(1 + z)^{-(γ+1/2)}` |
/// | `inv_g0prime` | – | `1 / g0'` with a zero-free certificate |
pub fn catalog(name: &str, params: &[Complex64]) -> Result<AnalyticExpr> {
    let bad = |reason: &str| Error::BadParams { name: name.to_string(), reason: reason.to_string() };
    let real = |i: usize| -> Result<f64> {
        let p = params.get(i).ok_or_else(|| bad(&format!("missing parameter {}", i + 1)))?;
        if p.im != 0.0 {
            return Err(bad(&format!("parameter {} must be real", i + 1)));
        }
        Ok(p.re)
    };
    let unit = |i: usize, default: Option<Complex64>| -> Result<Complex64> {
        let w = match (params.get(i), default) {
            (Some(w), _) => *w,
            (None, Some(d)) => d,
            (None, None) => return Err(bad(&format!("missing parameter {}", i + 1))),
        };
        if (w.norm() - 1.0).abs() > 1e-9 {
            return Err(bad("w must lie on the unit circle"));
        }
        Ok(w)
    };
    let arity = |max: usize| -> Result<()> {
        if params.len() > max {
            Err(bad(&format!("expected at most {max} parameters, got {}", params.len())))
        } else {
            Ok(())
        }
    };
    let one = c(1.0);
    match name {
        "g0" => {
            arity(0)?;
            AnalyticExpr::lin_log(one)
        }
        "monomial" => {
            arity(1)?;
            let n = real(0)?;
            if n < 0.0 || n.fract() != 0.0 {
                return Err(bad("n must be a non-negative integer"));
            }
            Ok(AnalyticExpr::monomial(n as usize))
        }
        "e1_witness" => {
            arity(2)?;
            let gamma = real(0)?;
            let w = unit(1, Some(c(-1.0)))?;
            Ok(AnalyticExpr::Product(vec![
                AnalyticExpr::lin_pow(one, 1.0)?,
                AnalyticExpr::lin_pow(w.conj(), -(gamma + 1.0))?,
            ]))
        }
        "e1_fgprime" => {
            arity(2)?;
            let gamma = real(0)?;
            let w = unit(1, Some(c(-1.0)))?;
            AnalyticExpr::lin_pow(w.conj(), -(gamma + 1.0))
        }
        "pow_witness" => {
            arity(1)?;
            AnalyticExpr::lin_pow(one, -real(0)?)
        }
        "ray_pow" => {
            arity(2)?;
            let alpha = real(0)?;
            let w = unit(1, None)?;
            AnalyticExpr::lin_pow(w.conj(), -alpha)
        }
        "propJ_witness" => {
            arity(1)?;
            let gamma = real(0)?;
            Ok(AnalyticExpr::Product(vec![
                AnalyticExpr::lin_pow(one, 1.0)?,
                AnalyticExpr::lin_pow(c(-1.0), -(gamma + 0.5))?,
            ]))
        }
        "inv_g0prime" => {
            arity(0)?;
            Ok(AnalyticExpr::recip_certified(AnalyticExpr::lin_pow(one, -1.0)?))
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// `g0'(z) = 1/(1 - z)`.
pub fn g0_prime() -> AnalyticExpr {
    AnalyticExpr::LinPow { a: c(1.0), rho: -1.0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pow(a: f64, rho: f64) -> AnalyticExpr {
        AnalyticExpr::lin_pow(c(a), rho).unwrap()
    }

    fn all_catalog() -> Vec<AnalyticExpr> {
        let w = Complex64::from_polar(1.0, 2.0);
        vec![
            catalog("g0", &[]).unwrap(),
            catalog("monomial", &[c(3.0)]).unwrap(),
            catalog("e1_witness", &[c(1.0)]).unwrap(),
            catalog("e1_witness", &[c(0.5), w]).unwrap(),
            catalog("e1_fgprime", &[c(2.0)]).unwrap(),
            catalog("pow_witness", &[c(1.5)]).unwrap(),
            catalog("ray_pow", &[c(0.75), w]).unwrap(),
            catalog("propJ_witness", &[c(1.0)]).unwrap(),
            catalog("inv_g0prime", &[]).unwrap(),
        ]
    }

    #[test]
    fn eval_examples() {
        assert_abs_diff_eq!(pow(1.0, -1.0).eval(c(0.5)).unwrap().re, 2.0, epsilon = 1e-15);
        assert_eq!(AnalyticExpr::lin_log(c(1.0)).unwrap().eval(c(0.0)).unwrap(), c(0.0));
        let v = pow(-1.0, -2.0).eval(c(0.5)).unwrap();
        assert_abs_diff_eq!(v.re, 4.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0);
    }

    #[test]
    fn eval_errors() {
        assert!(matches!(pow(1.0, -1.0).eval(c(1.0)), Err(Error::Domain { .. })));
        assert_eq!(AnalyticExpr::recip(AnalyticExpr::Var).eval(c(0.1)), Err(Error::Uncertified));
        let zero_child = AnalyticExpr::recip_certified(AnalyticExpr::Var);
        assert!(matches!(zero_child.eval(c(0.0)), Err(Error::Singularity { .. })));
        assert!(AnalyticExpr::lin_pow(c(1.5), 1.0).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(catalog("g0", &[]).unwrap().derivative(), pow(1.0, -1.0));
        assert_eq!(AnalyticExpr::Const(Complex64::new(2.0, 3.0)).derivative(), AnalyticExpr::constant(0.0));
        assert_eq!(
            pow(1.0, 0.5).derivative(),
            AnalyticExpr::Product(vec![AnalyticExpr::constant(-0.5), pow(1.0, -0.5)])
        );
    }

    #[test]
    fn taylor_examples() {
        // binomial-series oracle: coefficients of (1-z)^{-2} are n+1
        let oracle: Vec<f64> = (0..=3).map(|n| (n + 1) as f64).collect();
        assert_eq!(pow(1.0, -2.0).taylor(3).unwrap(), TruncatedSeries::from_real(&oracle).unwrap());

        // integrating the geometric series term by term
        let log = AnalyticExpr::lin_log(c(1.0)).unwrap().taylor(3).unwrap();
        let expected = [0.0, 1.0, 0.5, 1.0 / 3.0];
        for (got, want) in log.coeffs().iter().zip(expected) {
            assert_abs_diff_eq!(got.re, want, epsilon = 1e-15);
        }
        assert_eq!(AnalyticExpr::constant(7.0).taylor(2).unwrap(), TruncatedSeries::from_real(&[7.0, 0.0, 0.0]).unwrap());
    }

    #[test]
    fn taylor_of_recip_requires_nonzero_constant() {
        let e = AnalyticExpr::recip_certified(AnalyticExpr::Var);
        assert!(matches!(e.taylor(4), Err(Error::DivisionByZero { .. })));
        let inv = catalog("inv_g0prime", &[]).unwrap().taylor(4).unwrap();
        assert_eq!(inv, TruncatedSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]).unwrap());
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(catalog("g0", &[]).unwrap(), AnalyticExpr::LinLog { a: c(1.0) });
        assert_eq!(catalog("pow_witness", &[c(1.0)]).unwrap(), pow(1.0, -1.0));
        assert_eq!(
            catalog("e1_witness", &[c(1.0), c(-1.0)]).unwrap(),
            AnalyticExpr::Product(vec![pow(1.0, 1.0), pow(-1.0, -2.0)])
        );
        assert_eq!(catalog("nope", &[]), Err(Error::UnknownName("nope".into())));
        assert!(catalog("ray_pow", &[c(1.0), c(0.5)]).is_err());
        assert!(catalog("monomial", &[c(1.5)]).is_err());
    }

    #[test]
    fn e1_witness_matches_hand_simplification() {
        // f = (1-z)/(1+z)^2 for γ = 1, w = -1
        let f = catalog("e1_witness", &[c(1.0)]).unwrap();
        for z in [c(0.3), Complex64::new(-0.2, 0.7), Complex64::new(0.9, -0.1)] {
            let want = (c(1.0) - z) / ((c(1.0) + z) * (c(1.0) + z));
            assert!((f.eval(z).unwrap() - want).norm() < 1e-14);
        }
    }

    fn interior_points() -> Vec<Complex64> {
        (0..20)
            .map(|k| {
                let r = 0.05 + 0.04 * k as f64;
                Complex64::from_polar(r, 0.7 + 2.3 * k as f64)
            })
            .collect()
    }

    #[test]
    fn derivative_matches_central_differences() {
        let h = 1e-6;
        for e in all_catalog() {
            let d = e.derivative();
            for z in interior_points() {
                let fd = (e.eval(z + h).unwrap() - e.eval(z - h).unwrap()) / (2.0 * h);
                let exact = d.eval(z).unwrap();
                assert!((exact - fd).norm() <= 1e-6 * exact.norm().max(1.0), "{e:?} at {z}: {exact} vs {fd}");
            }
        }
    }

    #[test]
    fn taylor_of_derivative_is_derivative_of_taylor() {
        let n = 64;
        for e in all_catalog() {
            let lhs = e.derivative().taylor(n - 1).unwrap();
            let t = e.taylor(n).unwrap();
            for k in 0..n {
                let rhs = t.coeff(k + 1) * ((k + 1) as f64);
                assert!((lhs.coeff(k) - rhs).norm() <= 1e-10 * rhs.norm().max(1.0), "{e:?} coeff {k}");
            }
        }
    }

    #[test]
    fn taylor_agrees_with_eval_inside_half_disc() {
        for e in all_catalog() {
            for n in [64, 128, 256] {
                let t = e.taylor(n).unwrap();
                // the geometric tail is below 2^{-n} times a small constant for these witnesses
                let bound = 1e3 * 0.5f64.powi(n as i32) + 1e-13;
                for z in interior_points().into_iter().map(|z| z * (0.5 / 0.85)) {
                    let err = (e.eval(z).unwrap() - t.evaluate(z).unwrap()).norm();
                    assert!(err <= bound.max(1e-12), "{e:?} degree {n}: {err}");
                }
            }
        }
    }

    #[test]
    fn json_form() {
        let e = catalog("e1_witness", &[c(1.0)]).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"["product",["linpow",{"a":[1.0,0.0],"rho":1.0}],["linpow",{"a":[-1.0,-0.0],"rho":-2.0}]]"#);
        assert_eq!(serde_json::from_str::<AnalyticExpr>(&s).unwrap(), e);
        let parsed: AnalyticExpr = serde_json::from_str(r#"["sum", ["var"], ["const", 2]]"#).unwrap();
        assert_eq!(parsed.eval(c(0.25)).unwrap(), c(2.25));
        assert!(serde_json::from_str::<AnalyticExpr>(r#"["linpow", {"a": [2, 0], "rho": 1}]"#).is_err());
        assert!(serde_json::from_str::<AnalyticExpr>(r#"["bogus"]"#).is_err());
    }

    #[test]
    fn polynomial_degree_detects_finite_expansions() {
        assert_eq!(AnalyticExpr::monomial(3).polynomial_degree(), Some(3));
        assert_eq!(AnalyticExpr::monomial(3).derivative().polynomial_degree(), Some(2));
        let p = AnalyticExpr::lin_pow(c(1.0), 2.0).unwrap().plus(AnalyticExpr::Var);
        assert_eq!(p.polynomial_degree(), Some(2));
        assert_eq!(p.taylor(2).unwrap(), TruncatedSeries::from_real(&[1.0, -1.0, 1.0]).unwrap());
        assert_eq!(catalog("g0", &[]).unwrap().polynomial_degree(), None);
        assert_eq!(catalog("pow_witness", &[c(1.0)]).unwrap().polynomial_degree(), None);
        assert_eq!(catalog("e1_witness", &[c(1.0)]).unwrap().polynomial_degree(), None);
    }
}
