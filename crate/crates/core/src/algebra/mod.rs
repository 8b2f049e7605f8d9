//! Exact polynomial and truncated power-series arithmetic.

pub mod json;
pub mod poly;
pub mod ring;
pub mod series;

pub use poly::{format_rational, frac, rat, GradedPolynomial};
pub use ring::{GradedVariable, Monomial, Ring};
pub use series::{univariate, TruncatedSeries};
