use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::instance::{TheoryKind, TheoryRing};
use crate::algebra::{GradedPolynomial, Monomial};
use crate::error::{Error, Result};
use crate::variety::{CompleteIntersection, Variety};

/// `t (t-1) ... (t-k+1) / k!` for any integer `t`.
pub fn generalized_binomial(t: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= t - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `chi(P^{n_1} x ... x P^{n_k}, O(a_1, ..., a_k)) = prod C(n_i + a_i, n_i)`.
pub fn euler_characteristic_line_bundle(dims: &[usize], twist: &[i64]) -> BigInt {
    dims.iter().zip(twist).map(|(&n, &a)| generalized_binomial(&BigInt::from(n as i64 + a), n)).product()
}

/// `chi(V, O_V)` from the Koszul resolution of each component.
pub fn structure_sheaf_euler_characteristic(v: &Variety) -> BigInt {
    v.components().iter().map(complete_intersection_chi).sum()
}

fn complete_intersection_chi(ci: &CompleteIntersection) -> BigInt {
    let dims = ci.ambient().dims();
    let cuts = ci.cuts();
    let mut total = BigInt::zero();
    for subset in 0u64..(1 << cuts.len()) {
        let mut twist = vec![0i64; dims.len()];
        let mut sign = 1;
        for (j, cut) in cuts.iter().enumerate() {
            if subset >> j & 1 == 1 {
                sign = -sign;
                for (t, &a) in twist.iter_mut().zip(cut) {
                    *t -= i64::from(a);
                }
            }
        }
        total += euler_characteristic_line_bundle(dims, &twist) * sign;
    }
    total
}

fn beta_power(t: &TheoryRing, k: i64) -> GradedPolynomial {
    let ring = t.spec().coefficient_ring();
    let mut m = vec![0i32; ring.len()];
    m[0] = k as i32;
    GradedPolynomial::monomial(ring, Monomial(m), BigRational::one())
}

/// Pushforward of `prod x_i^{e_i}` from `prod P^{n_i}` to the point.
///
/// Chow: the degree map. K-theory: `x = (1 - [O(-1)]) beta^-1`, so
/// `x^e = beta^-e sum_j C(e,j) (-1)^j [O(-j)]`, pushed by `chi` and scaled by
/// `beta^{dim}`.
fn push_monomial(t: &TheoryRing, dims: &[usize], exps: &[usize]) -> Result<GradedPolynomial> {
    let ring = t.spec().coefficient_ring();
    match t.spec().kind {
        TheoryKind::Chow => {
            let top = exps.iter().zip(dims).all(|(e, n)| e == n);
            Ok(GradedPolynomial::integer(ring, i64::from(top)))
        }
        TheoryKind::KTheory => {
            let mut total = GradedPolynomial::one(ring);
            for (&e, &n) in exps.iter().zip(dims) {
                let mut chi = BigInt::zero();
                for j in 0..=e {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    chi += generalized_binomial(&BigInt::from(e), j)
                        * euler_characteristic_line_bundle(&[n], &[-(j as i64)])
                        * sign;
                }
                let factor = beta_power(t, n as i64 - e as i64).scale(&BigRational::from_integer(chi));
                total = &total * &factor;
            }
            Ok(total)
        }
        TheoryKind::Universal => {
            Err(Error::UnsupportedTheory("pushforward is only defined for chow and k-theory".into()))
        }
    }
}

/// Pushforward to the point, landing in the coefficient ring.
pub fn pushforward_point(t: &TheoryRing, e: &GradedPolynomial) -> Result<GradedPolynomial> {
    let dims = t.ambient().dims().to_vec();
    let mut acc = GradedPolynomial::zero(t.spec().coefficient_ring());
    for (m, c) in t.reduce(e).terms() {
        let (a, x) = t.split(m);
        let exps: Vec<usize> = x.iter().map(|&v| v as usize).collect();
        let scalar = GradedPolynomial::monomial(t.spec().coefficient_ring(), Monomial(a.to_vec()), c.clone());
        acc = &acc + &(&scalar * &push_monomial(t, &dims, &exps)?);
    }
    Ok(acc)
}

fn check_split(base: &TheoryRing, total: &TheoryRing) -> Result<()> {
    let k = base.ambient().factors();
    if base.spec() != total.spec() || total.ambient().dims().get(..k) != Some(base.ambient().dims()) {
        return Err(Error::InvalidVariety(format!(
            "{} is not a product with first factor {}",
            total.ambient(),
            base.ambient()
        )));
    }
    Ok(())
}

/// Pullback along the projection `base x fiber -> base`.
pub fn pullback_projection(base: &TheoryRing, total: &TheoryRing, b: &GradedPolynomial) -> Result<GradedPolynomial> {
    check_split(base, total)?;
    Ok(total.reduce(&b.embed(total.ring())?))
}

/// Pushforward along the projection `base x fiber -> base`.
pub fn pushforward_projection(total: &TheoryRing, base: &TheoryRing, e: &GradedPolynomial) -> Result<GradedPolynomial> {
    check_split(base, total)?;
    let k = base.ambient().factors();
    let fiber_dims = total.ambient().dims()[k..].to_vec();
    let mut acc = base.zero();
    for (m, c) in total.reduce(e).terms() {
        let (a, x) = total.split(m);
        let fiber: Vec<usize> = x[k..].iter().map(|&v| v as usize).collect();
        let pushed = push_monomial(total, &fiber_dims, &fiber)?;
        let mut kept = a.to_vec();
        kept.extend_from_slice(&x[..k]);
        let head = GradedPolynomial::monomial(base.ring(), Monomial(kept), c.clone());
        acc = &acc + &base.mul(&head, &base.scalar(&pushed)?);
    }
    Ok(acc)
}

/// `a (x) b` on `A x B` for `a` on `A` and `b` on `B`.
pub fn external_product(
    left: &TheoryRing,
    right: &TheoryRing,
    total: &TheoryRing,
    a: &GradedPolynomial,
    b: &GradedPolynomial,
) -> Result<GradedPolynomial> {
    check_split(left, total)?;
    let shift = left.ambient().factors();
    let k = right.coefficient_count();
    let terms = b.terms().map(|(m, c)| {
        let mut e = vec![0i32; total.ring().len()];
        e[..k].copy_from_slice(&m.0[..k]);
        for (i, &x) in m.0[k..].iter().enumerate() {
            e[k + shift + i] = x;
        }
        (Monomial(e), c.clone())
    });
    let moved = GradedPolynomial::from_terms(total.ring(), terms)?;
    Ok(total.mul(&a.embed(total.ring())?, &moved))
}

/// The K-theory class `[O(a_1, ..., a_k)] = prod (1 - beta x_i)^{-a_i}`.
pub fn k_class(t: &TheoryRing, twist: &[i64]) -> Result<GradedPolynomial> {
    if t.spec().kind != TheoryKind::KTheory {
        return Err(Error::UnsupportedTheory(format!("line bundle classes need k-theory, not {}", t.spec().kind)));
    }
    let beta = t.scalar(&beta_power(t, 1))?;
    let mut acc = t.one();
    for (i, (&a, &n)) in twist.iter().zip(t.ambient().dims()).enumerate() {
        let minus_beta_x = t.mul(&beta, &t.x(i)).scale(&BigRational::from_integer((-1).into()));
        let mut factor = t.zero();
        let mut power = t.one();
        for j in 0..=n {
            let c = generalized_binomial(&BigInt::from(-a), j);
            factor = &factor + &power.scale(&BigRational::from_integer(c));
            power = t.mul(&power, &minus_beta_x);
        }
        acc = t.mul(&acc, &factor);
    }
    Ok(acc)
}
