use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::chow::ChowClass;
use super::model::{CompleteIntersection, Variety};
use crate::algebra::{rat, GradedPolynomial, GradedVariable, Monomial, Ring};
use crate::error::{Error, Result};

/// Partitions of `d` in decreasing order: `[4], [3,1], [2,2], [2,1,1], [1,1,1,1]`.
pub fn partitions(d: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            cur.push(part);
            go(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// Total Chern class of the tangent bundle and the fundamental class, both
/// in the Chow ring of the ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    pub total: ChowClass,
    pub fundamental: ChowClass,
}

impl ChernData {
    pub fn chern_class(&self, k: usize) -> ChowClass {
        self.total.component(k)
    }
}

/// `prod (1+h_i)^{n_i+1} / prod (1 + D_j)` from the Euler sequence and
/// adjunction; the division is a finite geometric series since `D_j` is nilpotent.
pub fn tangent_chern(ci: &CompleteIntersection) -> ChernData {
    let amb = ci.ambient();
    let one = ChowClass::one(amb);
    let mut total = one.clone();
    for (i, &n) in amb.dims().iter().enumerate() {
        total = total.mul(&one.add(&ChowClass::h(amb, i)).pow(n + 1));
    }
    let mut fundamental = one.clone();
    for cut in ci.cuts() {
        let d = ChowClass::divisor(amb, &cut.iter().map(|&a| i64::from(a)).collect::<Vec<_>>());
        let minus_d = d.scale(&BigInt::from(-1));
        let mut inverse = one.clone();
        let mut power = one.clone();
        for _ in 0..amb.dimension() {
            power = power.mul(&minus_d);
            inverse = inverse.add(&power);
        }
        total = total.mul(&inverse);
        fundamental = fundamental.mul(&d);
    }
    ChernData { total, fundamental }
}

/// Tangent Chern data of every component of a catalog variety.
pub fn variety_chern_data(v: &Variety) -> Vec<ChernData> {
    v.components().iter().map(tangent_chern).collect()
}

/// All Chern numbers of `v`, keyed by partition, in canonical partition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernNumbers {
    pub dimension: usize,
    pub values: Vec<(Vec<usize>, BigInt)>,
}

impl ChernNumbers {
    pub fn get(&self, partition: &[usize]) -> Option<&BigInt> {
        self.values.iter().find(|(p, _)| p == partition).map(|(_, v)| v)
    }
}

fn component_chern_numbers(ci: &CompleteIntersection) -> Vec<BigInt> {
    let data = tangent_chern(ci);
    let d = ci.dimension();
    let classes: Vec<ChowClass> = (0..=d).map(|k| data.chern_class(k)).collect();
    let mut out = Vec::new();
    // walk the partition tree, carrying [V] * c_{parts so far}
    fn go(remaining: usize, max: usize, acc: &ChowClass, classes: &[ChowClass], out: &mut Vec<BigInt>) {
        if remaining == 0 {
            out.push(acc.degree());
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            go(remaining - part, part, &acc.mul(&classes[part]), classes, out);
        }
    }
    go(d, d, &data.fundamental, &classes, &mut out);
    out
}

pub fn chern_numbers(v: &Variety) -> Result<ChernNumbers> {
    let d = v.dimension()?;
    let parts = partitions(d);
    let mut sums = vec![BigInt::zero(); parts.len()];
    for ci in v.components() {
        for (s, x) in sums.iter_mut().zip(component_chern_numbers(&ci)) {
            *s += x;
        }
    }
    Ok(ChernNumbers { dimension: d, values: parts.into_iter().zip(sums).collect() })
}

/// The Chern number `deg(c_{l_1} ... c_{l_r} [V])`.
pub fn chern_number(v: &Variety, partition: &[usize]) -> Result<BigInt> {
    let d = v.dimension()?;
    if partition.contains(&0) || partition.iter().sum::<usize>() != d {
        return Err(Error::BadPartition { partition: partition.to_vec(), dim: d });
    }
    let mut total = BigInt::zero();
    for ci in v.components() {
        let data = tangent_chern(&ci);
        let mut acc = data.fundamental.clone();
        for &p in partition {
            acc = acc.mul(&data.chern_class(p));
        }
        total += acc.degree();
    }
    Ok(total)
}

/// `Q[c_1, ..., c_d]` with `deg c_i = i`.
pub fn chern_ring(d: usize) -> Arc<Ring> {
    Ring::new((1..=d).map(|i| GradedVariable::new(format!("c{i}"), i as i64)).collect()).expect("distinct names")
}

/// Power sum of the Chern roots as a polynomial in the Chern classes, by
/// Newton's recurrence `s_k = sum_{i<k} (-1)^{i-1} c_i s_{k-i} + (-1)^{k-1} k c_k`.
pub fn newton_sd(d: usize) -> GradedPolynomial {
    let ring = chern_ring(d);
    let c = |i: usize| GradedPolynomial::gen(&ring, i - 1);
    let mut s: Vec<GradedPolynomial> = vec![GradedPolynomial::zero(&ring)];
    for k in 1..=d {
        let mut sk = c(k).scale(&rat(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
        for i in 1..k {
            let term = &c(i) * &s[k - i];
            sk = if i % 2 == 1 { &sk + &term } else { &sk - &term };
        }
        s.push(sk);
    }
    s.pop().unwrap()
}

/// Evaluates a polynomial in `c_1..c_d` (from [`chern_ring`]) on `v`.
pub fn evaluate_chern_polynomial(v: &Variety, p: &GradedPolynomial) -> Result<BigRational> {
    let numbers = chern_numbers(v)?;
    let d = numbers.dimension;
    let mut total = BigRational::zero();
    for (m, coeff) in p.terms() {
        let mut partition: Vec<usize> = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            partition.extend(std::iter::repeat_n(i + 1, e as usize));
        }
        partition.sort_unstable_by(|a, b| b.cmp(a));
        if partition.iter().sum::<usize>() != d {
            return Err(Error::BadPartition { partition, dim: d });
        }
        let value = numbers.get(&partition).cloned().unwrap_or_default();
        total += coeff * BigRational::from_integer(value);
    }
    Ok(total)
}

/// `s_d[V]` through the Newton polynomial in the Chern classes.
pub fn s_number_newton(v: &Variety) -> Result<BigInt> {
    let d = v.dimension()?;
    let val = evaluate_chern_polynomial(v, &newton_sd(d))?;
    Ok(val.to_integer())
}

/// `s_d[V]` as the power sum of the virtual roots: `n_i + 1` copies of `h_i`
/// minus one copy of each cut divisor.
pub fn s_number_virtual_roots(v: &Variety) -> Result<BigInt> {
    let d = v.dimension()?;
    let mut total = BigInt::zero();
    for ci in v.components() {
        let amb = ci.ambient();
        let mut power_sum = ChowClass::zero(amb);
        for (i, &n) in amb.dims().iter().enumerate() {
            power_sum = power_sum.add(&ChowClass::h(amb, i).pow(d).scale(&BigInt::from(n + 1)));
        }
        let mut fundamental = ChowClass::one(amb);
        for cut in ci.cuts() {
            let div = ChowClass::divisor(amb, &cut.iter().map(|&a| i64::from(a)).collect::<Vec<_>>());
            power_sum = power_sum.sub(&div.pow(d));
            fundamental = fundamental.mul(&div);
        }
        total += power_sum.mul(&fundamental).degree();
    }
    Ok(total)
}

/// `s_d[V]` for `d = dim V`, computed along both routes.
pub fn s_number(v: &Variety) -> Result<BigInt> {
    let newton = s_number_newton(v)?;
    let roots = s_number_virtual_roots(v)?;
    if newton != roots {
        return Err(Error::OracleDisagreement(format!("Newton {newton} vs virtual roots {roots}")));
    }
    Ok(newton)
}

/// Used by report rendering: the monomial `c_{l_1} ... c_{l_r}` of a partition.
pub fn partition_label(partition: &[usize]) -> String {
    if partition.is_empty() {
        return "1".into();
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in partition {
        *counts.entry(p).or_default() += 1;
    }
    counts
        .iter()
        .rev()
        .map(|(p, k)| if *k == 1 { format!("c{p}") } else { format!("c{p}^{k}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Exponent vector of a partition in [`chern_ring`] coordinates.
pub fn partition_monomial(partition: &[usize], d: usize) -> Monomial {
    let mut e = vec![0; d];
    for &p in partition {
        e[p - 1] += 1;
    }
    Monomial(e)
}
