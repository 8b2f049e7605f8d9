use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedPolynomial, GradedVariable, Monomial, Ring, TruncatedSeries};
use crate::error::{Error, Result};
use crate::fgl::{builtin_fgl, n_series, universal_fgl, BuiltinKind, FormalGroupLaw};
use crate::variety::Ambient;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoryKind {
    /// Chow groups, additive law over `Q`.
    Chow,
    /// `K_0[beta, beta^-1]`, multiplicative law `u + v - beta uv`.
    KTheory,
    /// The universal law over `Q[m_1, ..., m_{N-1}]`.
    Universal,
}

impl fmt::Display for TheoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoryKind::Chow => "chow",
            TheoryKind::KTheory => "k-theory",
            TheoryKind::Universal => "universal",
        })
    }
}

/// A coefficient ring together with a formal group law over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheorySpec {
    pub kind: TheoryKind,
    pub fgl: Arc<FormalGroupLaw>,
}

impl TheorySpec {
    pub fn chow(order: usize) -> Self {
        TheorySpec { kind: TheoryKind::Chow, fgl: Arc::new(builtin_fgl(BuiltinKind::Additive, order)) }
    }

    pub fn k_theory(order: usize) -> Self {
        TheorySpec { kind: TheoryKind::KTheory, fgl: Arc::new(builtin_fgl(BuiltinKind::Multiplicative, order)) }
    }

    pub fn universal(order: usize) -> Result<Self> {
        Ok(TheorySpec { kind: TheoryKind::Universal, fgl: universal_fgl(order)? })
    }

    pub fn new(kind: TheoryKind, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::OrderTooSmall(order));
        }
        match kind {
            TheoryKind::Chow => Ok(Self::chow(order)),
            TheoryKind::KTheory => Ok(Self::k_theory(order)),
            TheoryKind::Universal => Self::universal(order),
        }
    }

    pub fn coefficient_ring(&self) -> &Arc<Ring> {
        self.fgl.ring()
    }
}

/// `A[x_1, ..., x_k] / (x_i^{n_i + 1})`, the theory evaluated on a product of
/// projective spaces, with `x_i` the first Chern class of `O(1)` on factor `i`.
#[derive(Debug, Clone)]
pub struct TheoryRing {
    spec: TheorySpec,
    ambient: Ambient,
    ring: Arc<Ring>,
    /// Terms of total `x`-degree above `cap` are discarded.
    cap: usize,
}

impl TheoryRing {
    pub fn new(spec: &TheorySpec, ambient: &Ambient) -> Result<Self> {
        let xs: Vec<GradedVariable> =
            (1..=ambient.factors()).map(|i| GradedVariable::new(format!("x{i}"), 1)).collect();
        let ring = spec.coefficient_ring().extend(&xs)?;
        Ok(TheoryRing { spec: spec.clone(), ambient: ambient.clone(), ring, cap: ambient.dimension() })
    }

    pub(crate) fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn spec(&self) -> &TheorySpec {
        &self.spec
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub(crate) fn coefficient_count(&self) -> usize {
        self.spec.coefficient_ring().len()
    }

    /// Splits an exponent vector into its coefficient and `x` parts.
    pub(crate) fn split<'a>(&self, m: &'a Monomial) -> (&'a [i32], &'a [i32]) {
        m.0.split_at(self.coefficient_count())
    }

    pub fn x(&self, i: usize) -> GradedPolynomial {
        GradedPolynomial::gen(&self.ring, self.coefficient_count() + i)
    }

    pub fn one(&self) -> GradedPolynomial {
        GradedPolynomial::one(&self.ring)
    }

    pub fn zero(&self) -> GradedPolynomial {
        GradedPolynomial::zero(&self.ring)
    }

    /// A coefficient-ring element viewed in the theory ring.
    pub fn scalar(&self, c: &GradedPolynomial) -> Result<GradedPolynomial> {
        c.embed(&self.ring)
    }

    pub fn reduce(&self, p: &GradedPolynomial) -> GradedPolynomial {
        let dims = self.ambient.dims();
        let k = self.coefficient_count();
        let cap = self.cap;
        p.filter_terms(|m| {
            let xs = &m.0[k..];
            xs.iter().zip(dims).all(|(&e, &n)| e as usize <= n) && xs.iter().sum::<i32>() as usize <= cap
        })
    }

    pub fn mul(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> GradedPolynomial {
        self.reduce(&(a * b))
    }

    /// The monomial `prod x_i^{e_i}`.
    pub fn x_monomial(&self, exps: &[usize]) -> GradedPolynomial {
        let mut m = vec![0i32; self.ring.len()];
        for (i, &e) in exps.iter().enumerate() {
            m[self.coefficient_count() + i] = e as i32;
        }
        self.reduce(&GradedPolynomial::monomial(&self.ring, Monomial(m), BigRational::from_integer(1.into())))
    }

    /// Monomials `prod x_i^{e_i}`, `e_i <= n_i`, in mixed-radix order.
    pub fn basis(&self) -> Vec<Vec<usize>> {
        (0..self.ambient.rank()).map(|i| self.ambient.exponents(i)).collect()
    }

    /// Coefficient of `prod x_i^{e_i}` as an element of the coefficient ring.
    pub fn coefficient(&self, p: &GradedPolynomial, exps: &[usize]) -> GradedPolynomial {
        let coeff_ring = self.spec.coefficient_ring();
        let terms = p.terms().filter_map(|(m, c)| {
            let (a, x) = self.split(m);
            let matches = x.len() == exps.len() && x.iter().zip(exps).all(|(&e, &f)| e as usize == f);
            matches.then(|| (Monomial(a.to_vec()), c.clone()))
        });
        GradedPolynomial::from_terms(coeff_ring, terms).expect("exponents taken from a valid monomial")
    }

    /// `s(y)` for a univariate series `s(u)` over the coefficient ring.
    pub fn evaluate_series(&self, s: &TruncatedSeries, y: &GradedPolynomial) -> Result<GradedPolynomial> {
        let mut acc = self.zero();
        let mut power = self.one();
        for k in 0..=s.order() {
            let c = s.coeff(&[k as u32]);
            if !c.is_zero() {
                acc = &acc + &self.mul(&self.scalar(&c)?, &power);
            }
            power = self.mul(&power, y);
            if power.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// `F(y, z)`, exact once the law's order reaches the nilpotency of `y, z`.
    pub fn apply_fgl(&self, y: &GradedPolynomial, z: &GradedPolynomial) -> Result<GradedPolynomial> {
        let f = &self.spec.fgl;
        let n = f.order();
        let powers = |t: &GradedPolynomial| {
            let mut out = vec![self.one()];
            for _ in 0..n {
                let next = self.mul(out.last().unwrap(), t);
                out.push(next);
            }
            out
        };
        let (py, pz) = (powers(y), powers(z));
        let mut acc = self.zero();
        for (i, yi) in py.iter().enumerate() {
            for (j, zj) in pz.iter().enumerate().take(n + 1 - i) {
                let c = f.coeff(i as u32, j as u32);
                if !c.is_zero() {
                    acc = &acc + &self.mul(&self.scalar(&c)?, &self.mul(yi, zj));
                }
            }
        }
        Ok(acc)
    }

    /// `c_1(O(a_1, ..., a_k)) = F([a_1](x_1), F([a_2](x_2), ...))`.
    pub fn c1_line_bundle(&self, twist: &[i64]) -> Result<GradedPolynomial> {
        if twist.len() != self.ambient.factors() {
            return Err(Error::InvalidVariety(format!(
                "twist {twist:?} does not match an ambient with {} factors",
                self.ambient.factors()
            )));
        }
        let need = self.cap.min(self.ambient.dimension());
        if self.spec.fgl.order() < need {
            return Err(Error::InsufficientOrder { have: self.spec.fgl.order(), need });
        }
        let mut acc = self.zero();
        for (i, &a) in twist.iter().enumerate().rev() {
            let y = self.evaluate_series(&n_series(&self.spec.fgl, a)?, &self.x(i))?;
            acc = if acc.is_zero() { y } else { self.apply_fgl(&y, &acc)? };
        }
        Ok(acc)
    }
}

pub fn c1_line_bundle(t: &TheoryRing, twist: &[i64]) -> Result<GradedPolynomial> {
    t.c1_line_bundle(twist)
}

/// Reads the law back from `c_1(O(1,1))` on `P^N x P^N`, keeping `x`-degree
/// at most `N`.
pub fn extract_fgl(spec: &TheorySpec, n: usize) -> Result<FormalGroupLaw> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    if spec.fgl.order() < n {
        return Err(Error::InsufficientOrder { have: spec.fgl.order(), need: n });
    }
    let t = TheoryRing::new(spec, &Ambient::new(vec![n, n]))?.with_cap(n);
    let c1 = t.c1_line_bundle(&[1, 1])?;
    let mut terms = Vec::new();
    for i in 0..=n {
        for j in 0..=(n - i) {
            let c = t.coefficient(&c1, &[i, j]);
            if !c.is_zero() {
                terms.push((vec![i as u32, j as u32], c));
            }
        }
    }
    let series = TruncatedSeries::from_terms(spec.coefficient_ring(), &["u", "v"], n, terms)?;
    FormalGroupLaw::from_series(&series)
}
