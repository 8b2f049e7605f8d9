use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::poly::{format_monomial, GradedPolynomial};
use super::ring::{Monomial, Ring};
use crate::error::{Error, Result};

/// Power series in a few formal variables with polynomial coefficients,
/// cut at total degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: Arc<Ring>,
    vars: Vec<String>,
    order: usize,
    coeffs: BTreeMap<Monomial, GradedPolynomial>,
}

impl TruncatedSeries {
    pub fn zero(ring: &Arc<Ring>, vars: &[&str], order: usize) -> Self {
        TruncatedSeries {
            ring: ring.clone(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>, vars: &[&str], order: usize) -> Self {
        let mut s = Self::zero(ring, vars, order);
        s.add_term(Monomial::one(vars.len()), GradedPolynomial::one(ring));
        s
    }

    /// The series consisting of the formal variable `name`.
    pub fn var(ring: &Arc<Ring>, vars: &[&str], order: usize, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::FormalVariables(format!("`{name}` is not among {vars:?}")))?;
        let mut s = Self::zero(ring, vars, order);
        s.add_term(Monomial::unit(vars.len(), i), GradedPolynomial::one(ring));
        Ok(s)
    }

    pub fn from_terms(
        ring: &Arc<Ring>,
        vars: &[&str],
        order: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, GradedPolynomial)>,
    ) -> Result<Self> {
        let mut s = Self::zero(ring, vars, order);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::FormalVariables(format!("exponent vector {e:?} for formal variables {vars:?}")));
            }
            if c.ring() != ring {
                return Err(Error::RingMismatch { left: c.ring().to_string(), right: ring.to_string() });
            }
            s.add_term(Monomial(e.iter().map(|&x| x as i32).collect()), c);
        }
        Ok(s)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GradedPolynomial)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> GradedPolynomial {
        let m = Monomial(exps.iter().map(|&x| x as i32).collect());
        self.coeffs.get(&m).cloned().unwrap_or_else(|| GradedPolynomial::zero(&self.ring))
    }

    pub fn constant_term(&self) -> GradedPolynomial {
        self.coeff(&vec![0; self.vars.len()])
    }

    fn add_term(&mut self, m: Monomial, c: GradedPolynomial) {
        if c.is_zero() || m.total_degree() > self.order as i64 {
            return;
        }
        match self.coeffs.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { left: self.ring.to_string(), right: other.ring.to_string() });
        }
        if self.vars != other.vars {
            return Err(Error::FormalVariables(format!("{:?} vs {:?}", self.vars, other.vars)));
        }
        Ok(())
    }

    /// Drops everything above total degree `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncatedSeries {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.total_degree() <= order as i64)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.truncate(other.order);
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| -c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(&self.ring, &[], order);
        out.vars = self.vars.clone();
        let limit = order as i64;
        for (ma, ca) in &self.coeffs {
            let da = ma.total_degree();
            if da > limit {
                continue;
            }
            for (mb, cb) in &other.coeffs {
                if da + mb.total_degree() > limit {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a polynomial.
    pub fn scale(&self, c: &GradedPolynomial) -> Result<Self> {
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch { left: c.ring().to_string(), right: self.ring.to_string() });
        }
        Ok(self.map_coefficients(|a| a * c))
    }

    pub fn map_coefficients(&self, f: impl Fn(&GradedPolynomial) -> GradedPolynomial) -> Self {
        let mut out = TruncatedSeries {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            order: self.order,
            coeffs: BTreeMap::new(),
        };
        for (m, c) in &self.coeffs {
            let v = f(c);
            if !v.is_zero() {
                out.coeffs.insert(m.clone(), v);
            }
        }
        out
    }

    /// Like [`map_coefficients`](Self::map_coefficients) but moving into a new coefficient ring.
    pub fn try_map_coefficients(
        &self,
        target: &Arc<Ring>,
        f: impl Fn(&GradedPolynomial) -> Result<GradedPolynomial>,
    ) -> Result<Self> {
        let mut out = TruncatedSeries {
            ring: target.clone(),
            vars: self.vars.clone(),
            order: self.order,
            coeffs: BTreeMap::new(),
        };
        for (m, c) in &self.coeffs {
            let v = f(c)?;
            if v.ring() != target {
                return Err(Error::RingMismatch { left: v.ring().to_string(), right: target.to_string() });
            }
            if !v.is_zero() {
                out.coeffs.insert(m.clone(), v);
            }
        }
        Ok(out)
    }

    /// Composition: every formal variable named in `subs` is replaced by the
    /// paired series. All substituted series must share one formal-variable
    /// list, which becomes the result's; any variable of `self` that is not
    /// substituted must also occur there and is kept as itself.
    pub fn substitute(&self, subs: &[(&str, &TruncatedSeries)]) -> Result<Self> {
        let Some((_, first)) = subs.first() else {
            return Ok(self.clone());
        };
        let target_vars: Vec<&str> = first.vars.iter().map(String::as_str).collect();
        let mut order = self.order;
        for (name, s) in subs {
            if !self.vars.iter().any(|v| v == name) {
                return Err(Error::FormalVariables(format!("`{name}` is not a variable of {:?}", self.vars)));
            }
            if s.ring != self.ring {
                return Err(Error::RingMismatch { left: s.ring.to_string(), right: self.ring.to_string() });
            }
            if s.vars != first.vars {
                return Err(Error::FormalVariables(format!(
                    "substituted series use {:?} and {:?}",
                    first.vars, s.vars
                )));
            }
            if !s.constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm(name.to_string()));
            }
            order = order.min(s.order);
        }

        let mut images = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            if let Some((_, s)) = subs.iter().find(|(n, _)| n == v) {
                images.push(s.truncate(order));
            } else if self.coeffs.keys().all(|m| m.0[i] == 0) {
                images.push(Self::zero(&self.ring, &target_vars, order));
            } else {
                images.push(Self::var(&self.ring, &target_vars, order, v)?);
            }
        }

        let mut powers: Vec<Vec<TruncatedSeries>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let max_e = self.coeffs.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
            let mut p = vec![Self::one(&self.ring, &target_vars, order)];
            for _ in 0..max_e.min(order) {
                let next = p.last().unwrap().mul(img)?;
                p.push(next);
            }
            powers.push(p);
        }

        let terms: Vec<(&Monomial, &GradedPolynomial)> = self.coeffs.iter().collect();
        let mut out = compose_horner(&terms, self.vars.len(), &powers, &self.ring, &target_vars, order)?;
        out.order = order;
        Ok(out)
    }

    /// Compositional inverse of a one-variable series `u + O(u^2)`.
    pub fn reverse(&self) -> Result<Self> {
        if self.vars.len() != 1 {
            return Err(Error::NotReversible(format!("expected one formal variable, got {:?}", self.vars)));
        }
        if !self.constant_term().is_zero() {
            return Err(Error::NotReversible("nonzero constant term".into()));
        }
        if self.order >= 1 && !self.coeff(&[1]).is_one() {
            return Err(Error::NotReversible(format!("linear coefficient is {}, not 1", self.coeff(&[1]))));
        }
        let name = self.vars[0].as_str();
        let u = Self::var(&self.ring, &[name], self.order, name)?;
        let mut g = u.clone();
        // each pass fixes the lowest-degree error term
        for _ in 0..=self.order {
            let err = self.substitute(&[(name, &g)])?.sub(&u)?;
            if err.is_zero() {
                return Ok(g);
            }
            g = g.sub(&err)?;
        }
        Err(Error::NotReversible("reversion did not converge".into()))
    }
}

fn compose_horner(
    terms: &[(&Monomial, &GradedPolynomial)],
    nvars: usize,
    powers: &[Vec<TruncatedSeries>],
    ring: &Arc<Ring>,
    target_vars: &[&str],
    order: usize,
) -> Result<TruncatedSeries> {
    if nvars == 0 {
        let mut s = TruncatedSeries::zero(ring, target_vars, order);
        for (_, c) in terms {
            s.add_term(Monomial::one(target_vars.len()), (*c).clone());
        }
        return Ok(s);
    }
    let last = nvars - 1;
    let mut groups: BTreeMap<i32, Vec<(&Monomial, &GradedPolynomial)>> = BTreeMap::new();
    for &(m, c) in terms {
        groups.entry(m.0[last]).or_default().push((m, c));
    }
    let mut out = TruncatedSeries::zero(ring, target_vars, order);
    for (e, group) in groups {
        let Some(pw) = powers[last].get(e as usize) else {
            // beyond the truncation order
            continue;
        };
        if pw.is_zero() {
            continue;
        }
        let inner = compose_horner(&group, last, powers, ring, target_vars, order)?;
        out = out.add(&inner.mul(pw)?)?;
    }
    Ok(out)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        // ascending total degree, leading variables first within a degree
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.total_degree().cmp(&b.total_degree()).then_with(|| b.cmp(a)));
        let mut first = true;
        for (m, c) in terms {
            let mono = format_monomial(&self.vars, &m.0);
            let body = if c.num_terms() > 1 { format!("({c})") } else { c.to_string() };
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) if c.num_terms() == 1 => (true, rest.to_string()),
                _ => (false, body),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (mono.is_empty(), body == "1") {
                (true, _) => write!(f, "{body}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{body}*{mono}")?,
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}

/// `sum_k c_k * u^k` in one formal variable.
pub fn univariate(
    ring: &Arc<Ring>,
    var: &str,
    order: usize,
    coeffs: impl IntoIterator<Item = (u32, GradedPolynomial)>,
) -> Result<TruncatedSeries> {
    TruncatedSeries::from_terms(ring, &[var], order, coeffs.into_iter().map(|(k, c)| (vec![k], c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{frac, rat};
    use crate::algebra::ring::GradedVariable;

    fn beta_ring() -> Arc<Ring> {
        Ring::new(vec![GradedVariable::laurent("beta", -1)]).unwrap()
    }

    fn mult_law(ring: &Arc<Ring>, vars: &[&str; 2], order: usize) -> TruncatedSeries {
        let b = GradedPolynomial::var(ring, "beta").unwrap();
        TruncatedSeries::from_terms(
            ring,
            vars,
            order,
            [(vec![1, 0], GradedPolynomial::one(ring)), (vec![0, 1], GradedPolynomial::one(ring)), (vec![1, 1], -&b)],
        )
        .unwrap()
    }

    #[test]
    fn additive_associativity() {
        let r = Ring::scalars();
        let uv = TruncatedSeries::from_terms(
            &r,
            &["u", "v"],
            6,
            [(vec![1, 0], GradedPolynomial::one(&r)), (vec![0, 1], GradedPolynomial::one(&r))],
        )
        .unwrap();
        let uvw = |e: Vec<u32>| (e, GradedPolynomial::one(&r));
        let s = TruncatedSeries::from_terms(&r, &["u", "v", "w"], 6, [uvw(vec![1, 0, 0]), uvw(vec![0, 1, 0])]).unwrap();
        let w = TruncatedSeries::var(&r, &["u", "v", "w"], 6, "w").unwrap();
        let out = uv.substitute(&[("u", &s), ("v", &w)]).unwrap();
        assert_eq!(out.to_string(), "u + v + w + O(7)");
    }

    #[test]
    fn multiplicative_unit() {
        let r = beta_ring();
        let f = mult_law(&r, &["u", "v"], 5);
        let zero = TruncatedSeries::zero(&r, &["u"], 5);
        let out = f.substitute(&[("v", &zero)]).unwrap();
        assert_eq!(out, TruncatedSeries::var(&r, &["u"], 5, "u").unwrap());
    }

    #[test]
    fn multiplicative_associativity_by_hand() {
        let r = beta_ring();
        let vars3 = ["u", "v", "w"];
        let f = mult_law(&r, &["u", "v"], 4);
        let fuv = mult_law(&r, &["u", "v"], 4)
            .substitute(&[
                ("u", &TruncatedSeries::var(&r, &vars3, 4, "u").unwrap()),
                ("v", &TruncatedSeries::var(&r, &vars3, 4, "v").unwrap()),
            ])
            .unwrap();
        let fvw = mult_law(&r, &["u", "v"], 4)
            .substitute(&[
                ("u", &TruncatedSeries::var(&r, &vars3, 4, "v").unwrap()),
                ("v", &TruncatedSeries::var(&r, &vars3, 4, "w").unwrap()),
            ])
            .unwrap();
        let w = TruncatedSeries::var(&r, &vars3, 4, "w").unwrap();
        let u = TruncatedSeries::var(&r, &vars3, 4, "u").unwrap();
        let left = f.substitute(&[("u", &fuv), ("v", &w)]).unwrap();
        let right = f.substitute(&[("u", &u), ("v", &fvw)]).unwrap();
        assert_eq!(left, right);
        // u+v+w - beta(uv+uw+vw) + beta^2 uvw
        let b = GradedPolynomial::var(&r, "beta").unwrap();
        let one = GradedPolynomial::one(&r);
        let expected = TruncatedSeries::from_terms(
            &r,
            &vars3,
            4,
            [
                (vec![1, 0, 0], one.clone()),
                (vec![0, 1, 0], one.clone()),
                (vec![0, 0, 1], one),
                (vec![1, 1, 0], -&b),
                (vec![1, 0, 1], -&b),
                (vec![0, 1, 1], -&b),
                (vec![1, 1, 1], &b * &b),
            ],
        )
        .unwrap();
        assert_eq!(left, expected);
    }

    #[test]
    fn nonzero_constant_rejected() {
        let r = Ring::scalars();
        let f = TruncatedSeries::var(&r, &["u"], 4, "u").unwrap();
        let g = TruncatedSeries::one(&r, &["u"], 4);
        assert_eq!(f.substitute(&[("u", &g)]), Err(Error::NonzeroConstantTerm("u".into())));
    }

    #[test]
    fn reverse_identity() {
        let r = Ring::scalars();
        let u = TruncatedSeries::var(&r, &["u"], 6, "u").unwrap();
        assert_eq!(u.reverse().unwrap(), u);
    }

    #[test]
    fn reverse_quadratic_catalan() {
        let r = Ring::new(vec![GradedVariable::new("m1", -1)]).unwrap();
        let m1 = GradedPolynomial::var(&r, "m1").unwrap();
        let f = univariate(&r, "u", 4, [(1, GradedPolynomial::one(&r)), (2, m1.clone())]).unwrap();
        let g = f.reverse().unwrap();
        assert_eq!(g.to_string(), "u - m1*u^2 + 2*m1^2*u^3 - 5*m1^3*u^4 + O(5)");
        // back-substitution both ways
        let u = TruncatedSeries::var(&r, &["u"], 4, "u").unwrap();
        assert_eq!(f.substitute(&[("u", &g)]).unwrap(), u);
        assert_eq!(g.substitute(&[("u", &f)]).unwrap(), u);
    }

    #[test]
    fn reverse_log_like() {
        let r = beta_ring();
        let b = GradedPolynomial::var(&r, "beta").unwrap();
        let f = univariate(
            &r,
            "u",
            5,
            [(1, GradedPolynomial::one(&r)), (2, b.scale(&frac(1, 2))), (3, (&b * &b).scale(&frac(1, 3)))],
        )
        .unwrap();
        let g = f.reverse().unwrap();
        let u = TruncatedSeries::var(&r, &["u"], 5, "u").unwrap();
        assert_eq!(f.substitute(&[("u", &g)]).unwrap(), u);
        assert_eq!(g.substitute(&[("u", &f)]).unwrap(), u);
    }

    #[test]
    fn reverse_rejects_bad_leading_coefficient() {
        let r = Ring::scalars();
        let f = univariate(&r, "u", 3, [(1, GradedPolynomial::integer(&r, 2))]).unwrap();
        assert!(matches!(f.reverse(), Err(Error::NotReversible(_))));
        let f = univariate(&r, "u", 3, [(0, GradedPolynomial::one(&r)), (1, GradedPolynomial::one(&r))]).unwrap();
        assert!(matches!(f.reverse(), Err(Error::NotReversible(_))));
    }

    #[test]
    fn truncation_keeps_order_bound() {
        let r = Ring::scalars();
        let u = TruncatedSeries::var(&r, &["u"], 3, "u").unwrap();
        let mut p = u.clone();
        for _ in 0..5 {
            p = p.mul(&u).unwrap();
        }
        assert!(p.is_zero());
        let _ = rat(0);
    }
}
