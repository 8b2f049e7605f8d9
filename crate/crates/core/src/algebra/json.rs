//! Canonical JSON forms: variable declarations, exponent vectors and exact
//! coefficients as numerator/denominator strings.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::poly::GradedPolynomial;
use super::ring::{GradedVariable, Monomial, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i32>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub variables: Vec<GradedVariable>,
    pub terms: Vec<TermJson>,
}

pub fn terms_json(p: &GradedPolynomial) -> Vec<TermJson> {
    p.terms()
        .rev()
        .map(|(m, c)| TermJson { exponents: m.0.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
        .collect()
}

pub fn polynomial_json(p: &GradedPolynomial) -> PolynomialJson {
    PolynomialJson { variables: p.ring().vars().to_vec(), terms: terms_json(p) }
}

pub fn parse_rational(num: &str, den: &str) -> Result<BigRational> {
    let n: BigInt = num.parse().map_err(|_| Error::Catalog(format!("bad numerator `{num}`")))?;
    let d: BigInt = den.parse().map_err(|_| Error::Catalog(format!("bad denominator `{den}`")))?;
    if d == BigInt::from(0) {
        return Err(Error::Catalog("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

pub fn terms_from_json(ring: &Arc<Ring>, terms: &[TermJson]) -> Result<GradedPolynomial> {
    let parsed = terms
        .iter()
        .map(|t| Ok((Monomial(t.exponents.clone()), parse_rational(&t.num, &t.den)?)))
        .collect::<Result<Vec<_>>>()?;
    GradedPolynomial::from_terms(ring, parsed)
}

pub fn polynomial_from_json(j: &PolynomialJson) -> Result<GradedPolynomial> {
    let ring = Ring::new(j.variables.clone())?;
    terms_from_json(&ring, &j.terms)
}
