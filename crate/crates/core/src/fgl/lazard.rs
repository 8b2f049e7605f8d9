use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::law::{lazard_ring, universal_fgl};
use crate::algebra::json::{terms_from_json, terms_json, TermJson};
use crate::algebra::{GradedPolynomial, GradedVariable, Ring};
use crate::error::{Error, Result};

/// An element of the rationalized Lazard ring, written as a polynomial in the
/// logarithm coefficients `m_k` (cohomological degree `-k`).
///
/// Elements built over different numbers of generators compare equal when
/// their normal forms agree after embedding into the larger ring.
#[derive(Debug, Clone)]
pub struct LazardElement {
    value: GradedPolynomial,
}

fn generator_index(name: &str) -> Option<usize> {
    name.strip_prefix('m')?.parse().ok().filter(|&k| k >= 1)
}

impl LazardElement {
    pub fn new(value: GradedPolynomial) -> Result<Self> {
        for (i, v) in value.ring().vars().iter().enumerate() {
            if generator_index(&v.name) != Some(i + 1) || v.degree != -(i as i64 + 1) || v.laurent {
                return Err(Error::InvalidRing(format!("{} is not a Lazard coordinate ring", value.ring())));
            }
        }
        Ok(LazardElement { value })
    }

    pub fn zero(generators: usize) -> Self {
        LazardElement { value: GradedPolynomial::zero(&lazard_ring(generators)) }
    }

    pub fn one(generators: usize) -> Self {
        LazardElement { value: GradedPolynomial::one(&lazard_ring(generators)) }
    }

    pub fn integer(n: i64) -> Self {
        LazardElement { value: GradedPolynomial::integer(&lazard_ring(0), n) }
    }

    /// The logarithm coefficient `m_k`.
    pub fn m(k: usize) -> Self {
        assert!(k >= 1, "generators start at m1");
        LazardElement { value: GradedPolynomial::gen(&lazard_ring(k), k - 1) }
    }

    /// The universal coefficient `a_ij`, computed at the smallest sufficient order.
    pub fn a(i: u32, j: u32) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::InvalidRing(format!("a_{i}{j} is not a higher coefficient")));
        }
        let law = universal_fgl((i + j) as usize)?;
        LazardElement::new(law.a(i, j))
    }

    pub fn value(&self) -> &GradedPolynomial {
        &self.value
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.value.ring()
    }

    pub fn generators(&self) -> usize {
        self.value.ring().len()
    }

    /// Cohomological degree, `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<i64> {
        self.value.homogeneous_degree()
    }

    /// Degree in the homological grading `L_n = L^{-n}`.
    pub fn homological_degree(&self) -> Option<i64> {
        self.degree().map(|d| -d)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Re-expresses the element over `m_1, ..., m_n`, `n >= self.generators()`.
    pub fn extend_to(&self, generators: usize) -> Result<Self> {
        let ring = lazard_ring(generators.max(self.generators()));
        Ok(LazardElement { value: self.value.embed(&ring)? })
    }

    fn aligned(&self, other: &Self) -> (GradedPolynomial, GradedPolynomial) {
        let n = self.generators().max(other.generators());
        let a = self.extend_to(n).expect("prefix rings embed");
        let b = other.extend_to(n).expect("prefix rings embed");
        (a.value, b.value)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        LazardElement { value: self.value.scale(c) }
    }

    pub fn pow(&self, n: u32) -> Self {
        LazardElement { value: self.value.pow(n) }
    }

    /// Substitutes the generators through `f`; used for specializations.
    pub fn map_value(&self, f: impl FnOnce(&GradedPolynomial) -> Result<GradedPolynomial>) -> Result<GradedPolynomial> {
        f(&self.value)
    }

    pub fn to_json(&self) -> LazardElementJson {
        LazardElementJson {
            degree: self.degree(),
            homological_degree: self.homological_degree(),
            variables: self.value.ring().vars().to_vec(),
            terms: terms_json(&self.value),
        }
    }

    pub fn from_json(j: &LazardElementJson) -> Result<Self> {
        let ring = Ring::new(j.variables.clone())?;
        LazardElement::new(terms_from_json(&ring, &j.terms)?)
    }
}

/// Equality of normal forms in the `m`-coordinates.
pub fn lazard_eq(a: &LazardElement, b: &LazardElement) -> bool {
    let (x, y) = a.aligned(b);
    x == y
}

impl PartialEq for LazardElement {
    fn eq(&self, other: &Self) -> bool {
        lazard_eq(self, other)
    }
}

impl Eq for LazardElement {}

impl Add for &LazardElement {
    type Output = LazardElement;
    fn add(self, rhs: Self) -> LazardElement {
        let (x, y) = self.aligned(rhs);
        LazardElement { value: &x + &y }
    }
}

impl Sub for &LazardElement {
    type Output = LazardElement;
    fn sub(self, rhs: Self) -> LazardElement {
        let (x, y) = self.aligned(rhs);
        LazardElement { value: &x - &y }
    }
}

impl Mul for &LazardElement {
    type Output = LazardElement;
    fn mul(self, rhs: Self) -> LazardElement {
        let (x, y) = self.aligned(rhs);
        LazardElement { value: &x * &y }
    }
}

impl Neg for &LazardElement {
    type Output = LazardElement;
    fn neg(self) -> LazardElement {
        LazardElement { value: -&self.value }
    }
}

impl fmt::Display for LazardElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LazardElementJson {
    pub degree: Option<i64>,
    pub homological_degree: Option<i64>,
    pub variables: Vec<GradedVariable>,
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn a11_is_minus_two_m1() {
        let a11 = LazardElement::a(1, 1).unwrap();
        assert_eq!(a11, LazardElement::m(1).scale(&rat(-2)));
        assert_eq!(a11.degree(), Some(-1));
        assert_eq!(a11.homological_degree(), Some(1));
    }

    #[test]
    fn square_equals_product() {
        let a11 = LazardElement::a(1, 1).unwrap();
        assert_eq!(a11.pow(2), &a11 * &a11);
    }

    #[test]
    fn different_degrees_differ() {
        let a11 = LazardElement::a(1, 1).unwrap();
        let a12 = LazardElement::a(1, 2).unwrap();
        assert_ne!(a11, a12);
        assert_eq!(a12.degree(), Some(-2));
    }

    #[test]
    fn embedding_across_generator_counts() {
        let small = LazardElement::m(1);
        let big = small.extend_to(7).unwrap();
        assert_eq!(big.generators(), 7);
        assert_eq!(small, big);
    }

    #[test]
    fn rejects_foreign_rings() {
        let r = Ring::new(vec![GradedVariable::new("x", -1)]).unwrap();
        assert!(LazardElement::new(GradedPolynomial::gen(&r, 0)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let e = &LazardElement::a(2, 2).unwrap() + &LazardElement::m(3).scale(&crate::algebra::frac(1, 3));
        let text = serde_json::to_string(&e.to_json()).unwrap();
        let back = LazardElement::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, e);
    }
}
