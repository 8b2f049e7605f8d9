use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{Monomial, Ring};
use crate::error::{Error, Result};

/// Exact polynomial over a declared [`Ring`] with rational coefficients.
///
/// Terms with a zero coefficient are never stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPolynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GradedPolynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        GradedPolynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: BigRational) -> Self {
        Self::monomial(ring, Monomial::one(ring.len()), c)
    }

    pub fn integer(ring: &Arc<Ring>, n: i64) -> Self {
        Self::constant(ring, rat(n))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: BigRational) -> Self {
        debug_assert_eq!(m.0.len(), ring.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GradedPolynomial { ring: ring.clone(), terms }
    }

    /// The generator at position `i` of the ring.
    pub fn gen(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::unit(ring.len(), i), BigRational::one())
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring.index_of(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        Ok(Self::gen(ring, i))
    }

    /// `x^-1` for a Laurent variable.
    pub fn var_inverse(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring.index_of(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        if !ring.var(i).laurent {
            return Err(Error::NotInvertible(name.into()));
        }
        let mut m = Monomial::one(ring.len());
        m.0[i] = -1;
        Ok(Self::monomial(ring, m, BigRational::one()))
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            if m.0.len() != ring.len() {
                return Err(Error::InvalidRing(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    m.0.len(),
                    ring.len()
                )));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e < 0 && !ring.var(i).laurent {
                    return Err(Error::NotInvertible(ring.var(i).name.clone()));
                }
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one(self.ring.len()))
    }

    /// Returns the value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring.to_string(), right: other.ring.to_string() })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        GradedPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Weighted degree when every term shares one; `None` for zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| self.ring.weight(&m.0));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.terms.keys().all(|m| self.ring.weight(&m.0) == degree)
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        GradedPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Evaluates the polynomial with variable `i` replaced by `images[i]`, all
    /// images living in `target`. A negative exponent requires the image to be
    /// a unit monomial.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[GradedPolynomial]) -> Result<Self> {
        if images.len() != self.ring.len() {
            return Err(Error::InvalidRing(format!(
                "{} images supplied for {} variables",
                images.len(),
                self.ring.len()
            )));
        }
        for img in images {
            if img.ring != *target {
                return Err(Error::RingMismatch { left: img.ring.to_string(), right: target.to_string() });
            }
        }
        let mut pos_powers: Vec<Vec<GradedPolynomial>> =
            images.iter().map(|_| vec![GradedPolynomial::one(target)]).collect();
        let mut neg_powers: Vec<Vec<GradedPolynomial>> =
            images.iter().map(|_| vec![GradedPolynomial::one(target)]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (cache, base) = if e > 0 {
                    (&mut pos_powers[i], images[i].clone())
                } else {
                    let inv = images[i]
                        .monomial_inverse()
                        .ok_or_else(|| Error::NotInvertible(self.ring.var(i).name.clone()))?;
                    (&mut neg_powers[i], inv)
                };
                let k = e.unsigned_abs() as usize;
                while cache.len() <= k {
                    let next = cache.last().unwrap() * &base;
                    cache.push(next);
                }
                term = &term * &cache[k];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Inverse of a single-term polynomial whose variables are all Laurent.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        for (i, &e) in m.0.iter().enumerate() {
            if e != 0 && !self.ring.var(i).laurent {
                return None;
            }
        }
        let inv = Monomial(m.0.iter().map(|e| -e).collect());
        Some(Self::monomial(&self.ring, inv, c.recip()))
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Self> {
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.index_of(&v.name).ok_or_else(|| Error::UnknownVariable(v.name.clone())))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x < 0 && !target.var(map[i]).laurent {
                    return Err(Error::NotInvertible(target.var(map[i]).name.clone()));
                }
                e[map[i]] = x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    /// Panics on a ring mismatch; use [`GradedPolynomial::checked_add`] for untrusted inputs.
    fn add(self, rhs: Self) -> GradedPolynomial {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: Self) -> GradedPolynomial {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: Self) -> GradedPolynomial {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        GradedPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn format_monomial(names: &[String], exps: &[i32]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// Writes `c * mono` terms from highest to lowest, as `a - b + c`.
pub(crate) fn write_signed_terms<'a>(
    f: &mut impl fmt::Write,
    terms: impl Iterator<Item = (String, &'a BigRational)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{}", format_rational(&abs))?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{}*{mono}", format_rational(&abs))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.ring.vars().iter().map(|v| v.name.clone()).collect();
        write_signed_terms(f, self.terms.iter().rev().map(|(m, c)| (format_monomial(&names, &m.0), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::GradedVariable;

    fn h12() -> Arc<Ring> {
        Ring::new(vec![GradedVariable::new("h1", 1), GradedVariable::new("h2", 1)]).unwrap()
    }

    #[test]
    fn binomial_square() {
        let r = h12();
        let s = &GradedPolynomial::gen(&r, 0) + &GradedPolynomial::gen(&r, 1);
        let sq = &s * &s;
        assert_eq!(sq.to_string(), "h1^2 + 2*h1*h2 + h2^2");
        assert_eq!(sq.homogeneous_degree(), Some(2));
    }

    #[test]
    fn times_one_is_identity() {
        let r = h12();
        let a = &GradedPolynomial::gen(&r, 0) - &GradedPolynomial::integer(&r, 3);
        assert_eq!(&a * &GradedPolynomial::one(&r), a);
    }

    #[test]
    fn laurent_inverse_pair() {
        let r = Ring::new(vec![GradedVariable::laurent("beta", -1)]).unwrap();
        let b = GradedPolynomial::var(&r, "beta").unwrap();
        let bi = GradedPolynomial::var_inverse(&r, "beta").unwrap();
        assert!((&b * &bi).is_one());
        assert_eq!(bi.homogeneous_degree(), Some(1));
        assert_eq!(bi.to_string(), "beta^-1");
    }

    #[test]
    fn inverse_of_ordinary_variable_rejected() {
        let r = h12();
        assert_eq!(GradedPolynomial::var_inverse(&r, "h1"), Err(Error::NotInvertible("h1".into())));
    }

    #[test]
    fn ring_mismatch_names_both_rings() {
        let a = GradedPolynomial::one(&h12());
        let b = GradedPolynomial::one(&Ring::new(vec![GradedVariable::new("x", 1)]).unwrap());
        let err = a.checked_mul(&b).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("h1") && msg.contains('x'), "{msg}");
    }

    #[test]
    fn zero_coefficients_dropped() {
        let r = h12();
        let x = GradedPolynomial::gen(&r, 0);
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).num_terms(), 0);
    }

    #[test]
    fn substitute_laurent() {
        let src = Ring::new(vec![GradedVariable::laurent("beta", -1)]).unwrap();
        let tgt = Ring::new(vec![GradedVariable::laurent("t", -1)]).unwrap();
        let p = GradedPolynomial::var_inverse(&src, "beta").unwrap();
        let img = GradedPolynomial::var(&tgt, "t").unwrap().scale(&rat(2));
        let out = p.substitute(&tgt, &[img]).unwrap();
        assert_eq!(out.to_string(), "1/2*t^-1");
    }

    #[test]
    fn rational_display() {
        let r = h12();
        let p = &GradedPolynomial::gen(&r, 0).scale(&frac(-3, 4)) + &GradedPolynomial::integer(&r, 1);
        assert_eq!(p.to_string(), "-3/4*h1 + 1");
    }
}
