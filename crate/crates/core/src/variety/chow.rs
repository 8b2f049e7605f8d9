use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedPolynomial, GradedVariable, Monomial, Ring};

/// A product of projective spaces `P^{n_1} x ... x P^{n_k}`; the empty
/// product is the point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ambient {
    dims: Vec<usize>,
}

impl Ambient {
    pub fn new(dims: Vec<usize>) -> Self {
        Ambient { dims }
    }

    pub fn point() -> Self {
        Ambient { dims: Vec::new() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    pub fn dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Rank of the Chow ring as a free module: `prod (n_i + 1)`.
    pub fn rank(&self) -> usize {
        self.dims.iter().map(|n| n + 1).product()
    }

    pub fn product(&self, other: &Ambient) -> Ambient {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Ambient { dims }
    }

    /// Exponent vector of basis index `idx` (mixed radix, first factor least significant).
    pub fn exponents(&self, mut idx: usize) -> Vec<usize> {
        self.dims
            .iter()
            .map(|&n| {
                let e = idx % (n + 1);
                idx /= n + 1;
                e
            })
            .collect()
    }

    pub fn index(&self, exps: &[usize]) -> Option<usize> {
        let mut idx = 0;
        let mut stride = 1;
        for (&e, &n) in exps.iter().zip(&self.dims) {
            if e > n {
                return None;
            }
            idx += e * stride;
            stride *= n + 1;
        }
        Some(idx)
    }

    /// `Q[h_1, ..., h_k]`, every generator of degree 1.
    pub fn hyperplane_ring(&self) -> Arc<Ring> {
        Ring::new((1..=self.dims.len()).map(|i| GradedVariable::new(format!("h{i}"), 1)).collect())
            .expect("distinct names")
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "pt");
        }
        let parts: Vec<String> = self.dims.iter().map(|n| format!("P{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// An integral class in `Z[h_1..h_k] / (h_i^{n_i+1})`, stored densely on the
/// monomial basis, so the truncation relations hold by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    ambient: Ambient,
    coeffs: Vec<BigInt>,
}

impl ChowClass {
    pub fn zero(ambient: &Ambient) -> Self {
        ChowClass { ambient: ambient.clone(), coeffs: vec![BigInt::zero(); ambient.rank()] }
    }

    pub fn one(ambient: &Ambient) -> Self {
        Self::integer(ambient, 1)
    }

    pub fn integer(ambient: &Ambient, n: i64) -> Self {
        let mut c = Self::zero(ambient);
        c.coeffs[0] = BigInt::from(n);
        c
    }

    /// Hyperplane class of factor `i`.
    pub fn h(ambient: &Ambient, i: usize) -> Self {
        let mut exps = vec![0; ambient.factors()];
        exps[i] = 1;
        let mut c = Self::zero(ambient);
        if let Some(idx) = ambient.index(&exps) {
            c.coeffs[idx] = BigInt::one();
        }
        c
    }

    /// `sum_i a_i h_i`.
    pub fn divisor(ambient: &Ambient, multidegree: &[i64]) -> Self {
        let mut c = Self::zero(ambient);
        for (i, &a) in multidegree.iter().enumerate() {
            c = c.add(&Self::h(ambient, i).scale(&BigInt::from(a)));
        }
        c
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn coeff(&self, exps: &[usize]) -> BigInt {
        self.ambient.index(exps).map(|i| self.coeffs[i].clone()).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "classes on different ambients");
        ChowClass {
            ambient: self.ambient.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        ChowClass { ambient: self.ambient.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "classes on different ambients");
        let amb = &self.ambient;
        let mut out = Self::zero(amb);
        let nz = |v: &[BigInt]| -> Vec<(usize, Vec<usize>)> {
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| (i, amb.exponents(i))).collect()
        };
        let left = nz(&self.coeffs);
        let right = nz(&other.coeffs);
        for (ia, ea) in &left {
            for (ib, eb) in &right {
                // digits add without carry exactly when the product survives
                if ea.iter().zip(eb).zip(amb.dims()).all(|((a, b), n)| a + b <= *n) {
                    out.coeffs[ia + ib] += &self.coeffs[*ia] * &other.coeffs[*ib];
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(&self.ambient);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Homogeneous component of degree `k`.
    pub fn component(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.ambient);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && self.ambient.exponents(i).iter().sum::<usize>() == k {
                out.coeffs[i] = c.clone();
            }
        }
        out
    }

    /// Coefficient of the top monomial `h_1^{n_1} ... h_k^{n_k}`.
    pub fn degree(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn to_polynomial(&self) -> GradedPolynomial {
        let ring = self.ambient.hyperplane_ring();
        let terms = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
            let e = self.ambient.exponents(i).into_iter().map(|x| x as i32).collect();
            (Monomial(e), BigRational::from_integer(c.clone()))
        });
        GradedPolynomial::from_terms(&ring, terms).expect("nonnegative exponents")
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// Degree map: the coefficient of the top monomial.
pub fn chow_degree(c: &ChowClass) -> BigInt {
    c.degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_of_top_monomial() {
        let a = Ambient::new(vec![1, 1]);
        let hh = ChowClass::h(&a, 0).mul(&ChowClass::h(&a, 1));
        assert_eq!(chow_degree(&hh), BigInt::from(1));
    }

    #[test]
    fn square_of_diagonal_class() {
        let a = Ambient::new(vec![1, 1]);
        let s = ChowClass::divisor(&a, &[1, 1]);
        assert_eq!(chow_degree(&s.pow(2)), BigInt::from(2));
        assert_eq!(s.pow(2).to_string(), "2*h1*h2");
    }

    #[test]
    fn unit_has_no_degree_on_positive_dimension() {
        assert_eq!(chow_degree(&ChowClass::one(&Ambient::new(vec![2]))), BigInt::from(0));
        assert_eq!(chow_degree(&ChowClass::one(&Ambient::point())), BigInt::from(1));
    }

    #[test]
    fn nilpotency() {
        let a = Ambient::new(vec![2, 3]);
        assert!(ChowClass::h(&a, 0).pow(3).is_zero());
        assert!(!ChowClass::h(&a, 1).pow(3).is_zero());
        assert!(ChowClass::divisor(&a, &[4, 7]).pow(6).is_zero());
    }

    #[test]
    fn mixed_radix_round_trip() {
        let a = Ambient::new(vec![2, 0, 3]);
        for i in 0..a.rank() {
            assert_eq!(a.index(&a.exponents(i)), Some(i));
        }
    }
}
