//! Operators, growth-space norms and membership tests for analytic functions
//! on the unit disc.
//!
//! Functions are represented either by truncated Taylor coefficients
//! ([`TruncatedSeries`]) or by closed-form expressions ([`AnalyticExpr`]);
//! the latter are needed wherever boundary growth matters.

pub mod error;
pub mod expr;
pub mod function;
pub mod operators;
pub mod quadrature;
pub mod radial;
pub mod sampling;
pub mod series;
pub mod suite;

pub use error::{Error, Result};
pub use expr::{catalog, AnalyticExpr};
pub use function::{DiscFunction, Function};
pub use operators::OperatorSpec;
pub use radial::{
    ClassifyTolerances, GrowthFit, Membership, RadialGrid, RadialProfile, Variant, Weight,
};
pub use series::TruncatedSeries;
pub use suite::{Status, SuiteConfig, Verdict};

