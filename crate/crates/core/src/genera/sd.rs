use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::report::{serialize_int, serialize_opt_int};
use crate::error::{Error, Result};
use crate::variety::{s_number, Catalog, Variety};

/// A formal `Q`-linear combination of varieties of one dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalClass {
    pub terms: Vec<(BigRational, Variety)>,
}

impl FormalClass {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn of(v: Variety) -> Self {
        FormalClass { terms: vec![(BigRational::one(), v)] }
    }

    pub fn with(mut self, c: BigRational, v: Variety) -> Self {
        self.terms.push((c, v));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common dimension, `None` for the empty class.
    pub fn dimension(&self) -> Result<Option<usize>> {
        let mut dim = None;
        for (_, v) in &self.terms {
            let d = v.dimension()?;
            match dim {
                None => dim = Some(d),
                Some(e) if e != d => return Err(Error::MixedDimension(e, d)),
                _ => {}
            }
        }
        Ok(dim)
    }

    pub fn add(&self, other: &Self) -> Self {
        FormalClass { terms: self.terms.iter().chain(&other.terms).cloned().collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FormalClass { terms: self.terms.iter().map(|(a, v)| (a * c, v.clone())).collect() }
    }
}

/// `sum a_i s_d(V_i)`.
pub fn s_d_hom(c: &FormalClass) -> Result<BigRational> {
    c.dimension()?;
    let mut total = BigRational::zero();
    for (a, v) in &c.terms {
        total += a * BigRational::from_integer(s_number(v)?);
    }
    Ok(total)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

/// Whether `d = p^n - 1` for some `n >= 1`.
pub fn is_adams_dimension(d: usize, p: u64) -> bool {
    let mut q = d as u64 + 1;
    if q < p {
        return false;
    }
    while q.is_multiple_of(p) {
        q /= p;
    }
    q == 1
}

/// The prime `p` with `d = p^n - 1`, if any.
pub fn adams_prime(d: usize) -> Option<u64> {
    let q = d as u64 + 1;
    (2..=q).find(|&p| q.is_multiple_of(p)).filter(|&p| is_adams_dimension(d, p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdamsResult {
    pub dimension: usize,
    pub p: u64,
    pub applicable: bool,
    pub passes: bool,
    #[serde(serialize_with = "serialize_int")]
    pub s_number: BigInt,
    /// `s_d / p`, present when applicable and divisible.
    #[serde(serialize_with = "serialize_opt_int")]
    pub quotient: Option<BigInt>,
}

pub fn adams_check(v: &Variety, p: u64) -> Result<AdamsResult> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let dimension = v.dimension()?;
    let s = s_number(v)?;
    let applicable = is_adams_dimension(dimension, p);
    let (q, r) = s.div_rem(&BigInt::from(p));
    let passes = r.is_zero();
    Ok(AdamsResult { dimension, p, applicable, passes, quotient: (applicable && passes).then_some(q), s_number: s })
}

/// `(s_d(c) / p) mod p`, in `0..p`.
pub fn t_d1(c: &FormalClass, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = c.dimension()?.unwrap_or(0);
    if !is_adams_dimension(d, p) {
        return Err(Error::NotPrimePowerDimension { dim: d, p });
    }
    let pb = BigInt::from(p);
    for (_, v) in &c.terms {
        let s = s_number(v)?;
        if !s.is_multiple_of(&pb) {
            return Err(Error::NotDivisible { value: s.to_string(), p });
        }
    }
    let q = s_d_hom(c)? / BigRational::from_integer(pb.clone());
    if q.denom().is_multiple_of(&pb) {
        return Err(Error::NotDivisible { value: (q * BigRational::from_integer(pb)).to_string(), p });
    }
    let inv = q.denom().modpow(&(&pb - 2), &pb);
    let r = (q.numer() * inv).mod_floor(&pb);
    Ok(r.to_u64_digits().1.first().copied().unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdamsRow {
    pub label: String,
    #[serde(flatten)]
    pub result: AdamsResult,
}

/// Adams divisibility for every catalog variety whose dimension is `p^n - 1`.
pub fn adams_sweep(catalog: &Catalog) -> Result<Vec<AdamsRow>> {
    catalog
        .entries()
        .par_iter()
        .filter_map(|e| {
            let d = match e.variety.dimension() {
                Ok(d) => d,
                Err(err) => return Some(Err(err)),
            };
            let p = adams_prime(d)?;
            Some(adams_check(&e.variety, p).map(|result| AdamsRow { label: e.label.clone(), result }))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductRow {
    pub label: String,
    pub dimension: usize,
    #[serde(serialize_with = "serialize_int")]
    pub s_number: BigInt,
    pub passes: bool,
}

fn positive_dimensional_factors(v: &Variety) -> Result<usize> {
    match v {
        Variety::Product(fs) => {
            let mut n = 0;
            for f in fs {
                if f.dimension()? > 0 {
                    n += 1;
                }
            }
            Ok(n)
        }
        _ => Ok(usize::from(v.dimension()? > 0)),
    }
}

/// `s_d(X x Y) = 0` for every catalog product with at least two
/// positive-dimensional factors.
pub fn product_sweep(catalog: &Catalog) -> Result<Vec<ProductRow>> {
    catalog
        .entries()
        .par_iter()
        .filter_map(|e| match positive_dimensional_factors(&e.variety) {
            Ok(n) if n >= 2 => Some(e),
            _ => None,
        })
        .map(|e| {
            let s = s_number(&e.variety)?;
            Ok(ProductRow {
                label: e.label.clone(),
                dimension: e.variety.dimension()?,
                passes: s.is_zero(),
                s_number: s,
            })
        })
        .collect()
}
