//! Anything that can be evaluated pointwise on the open unit disc.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::expr::AnalyticExpr;
use crate::series::TruncatedSeries;

pub trait DiscFunction: Sync {
    fn value(&self, z: Complex64) -> Result<Complex64>;
}

impl DiscFunction for AnalyticExpr {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        self.eval(z)
    }
}

impl DiscFunction for TruncatedSeries {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        self.evaluate(z)
    }
}

impl<T: DiscFunction + ?Sized> DiscFunction for &T {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        (**self).value(z)
    }
}

impl<T: DiscFunction + ?Sized + Send> DiscFunction for Box<T> {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        (**self).value(z)
    }
}

/// Adapts a closure.
pub struct FnDisc<F>(pub F);

impl<F> DiscFunction for FnDisc<F>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    fn value(&self, z: Complex64) -> Result<Complex64> {
        (self.0)(z)
    }
}

/// Pointwise product of two functions.
pub struct ProductOf<A, B>(pub A, pub B);

impl<A: DiscFunction, B: DiscFunction> DiscFunction for ProductOf<A, B> {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.0.value(z)? * self.1.value(z)?)
    }
}

/// Either representation, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Function {
    Expr(AnalyticExpr),
    Series(TruncatedSeries),
}

impl Function {
    /// Taylor coefficients to `degree` (series are padded or cut).
    pub fn taylor(&self, degree: usize) -> Result<TruncatedSeries> {
        match self {
            Self::Expr(e) => e.taylor(degree),
            Self::Series(s) => Ok(s.with_degree(degree)),
        }
    }

    pub fn derivative(&self) -> Function {
        match self {
            Self::Expr(e) => Self::Expr(e.derivative()),
            Self::Series(s) => Self::Series(crate::operators::differentiate(s)),
        }
    }

    /// The exact coefficient sequence for series and polynomial expressions.
    pub fn exact_series(&self) -> Option<TruncatedSeries> {
        match self {
            Self::Series(s) => Some(s.clone()),
            Self::Expr(e) => e.polynomial_degree().and_then(|d| e.taylor(d).ok()),
        }
    }

    pub fn as_series(&self) -> Option<&TruncatedSeries> {
        match self {
            Self::Series(s) => Some(s),
            Self::Expr(_) => None,
        }
    }
}

impl DiscFunction for Function {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        match self {
            Self::Expr(e) => e.eval(z),
            Self::Series(s) => s.evaluate(z),
        }
    }
}
