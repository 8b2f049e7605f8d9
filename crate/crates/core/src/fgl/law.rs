use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::ringmap::RingMap;
use crate::algebra::json::{terms_from_json, terms_json, TermJson};
use crate::algebra::{frac, GradedPolynomial, GradedVariable, Ring, TruncatedSeries};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 8;

const UV: [&str; 2] = ["u", "v"];
const UVW: [&str; 3] = ["u", "v", "w"];

/// A one-dimensional formal group law `F(u, v)` known up to total degree `order`.
///
/// All coefficients are stored, including the linear ones, so that laws
/// violating the unit axiom can still be represented and diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalGroupLaw {
    ring: Arc<Ring>,
    order: usize,
    coeffs: BTreeMap<(u32, u32), GradedPolynomial>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuiltinKind {
    Additive,
    Multiplicative,
}

impl FormalGroupLaw {
    /// `u + v + sum a_ij u^i v^j`, from the higher coefficients alone.
    pub fn from_table(
        ring: &Arc<Ring>,
        order: usize,
        table: impl IntoIterator<Item = ((u32, u32), GradedPolynomial)>,
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        if order >= 1 {
            coeffs.insert((1, 0), GradedPolynomial::one(ring));
            coeffs.insert((0, 1), GradedPolynomial::one(ring));
        }
        let mut law = FormalGroupLaw { ring: ring.clone(), order, coeffs };
        for ((i, j), c) in table {
            if i == 0 || j == 0 {
                return Err(Error::InvalidRing(format!("a_{i}{j} is not a higher coefficient")));
            }
            law.insert((i, j), c)?;
        }
        Ok(law)
    }

    /// Takes every coefficient of a series in two formal variables as given.
    pub fn from_series(f: &TruncatedSeries) -> Result<Self> {
        if f.vars().len() != 2 {
            return Err(Error::FormalVariables(format!("expected two formal variables, got {:?}", f.vars())));
        }
        let mut law = FormalGroupLaw { ring: f.ring().clone(), order: f.order(), coeffs: BTreeMap::new() };
        for (m, c) in f.terms() {
            law.insert((m.0[0] as u32, m.0[1] as u32), c.clone())?;
        }
        Ok(law)
    }

    fn insert(&mut self, (i, j): (u32, u32), c: GradedPolynomial) -> Result<()> {
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch { left: c.ring().to_string(), right: self.ring.to_string() });
        }
        if (i + j) as usize > self.order || c.is_zero() {
            return Ok(());
        }
        self.coeffs.insert((i, j), c);
        Ok(())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `u^i v^j`.
    pub fn coeff(&self, i: u32, j: u32) -> GradedPolynomial {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| GradedPolynomial::zero(&self.ring))
    }

    /// Higher coefficient `a_ij` (`i, j >= 1`).
    pub fn a(&self, i: u32, j: u32) -> GradedPolynomial {
        debug_assert!(i >= 1 && j >= 1);
        self.coeff(i, j)
    }

    /// Nonzero coefficients `a_ij` with `i, j >= 1`.
    pub fn higher_coefficients(&self) -> impl Iterator<Item = ((u32, u32), &GradedPolynomial)> {
        self.coeffs.iter().filter(|((i, j), _)| *i >= 1 && *j >= 1).map(|(k, c)| (*k, c))
    }

    pub fn series(&self) -> TruncatedSeries {
        self.series_in(&UV)
    }

    fn series_in(&self, vars: &[&str; 2]) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            &self.ring,
            vars,
            self.order,
            self.coeffs.iter().map(|(&(i, j), c)| (vec![i, j], c.clone())),
        )
        .expect("coefficients share the law's ring")
    }

    /// `F(x, y)` for two series in the same formal variables.
    pub fn apply(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.series().substitute(&[("u", x), ("v", y)])
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        FormalGroupLaw {
            ring: self.ring.clone(),
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((i, j), _)| (i + j) as usize <= order)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Applies a ring map to every coefficient; the result is re-verified.
    pub fn specialize(&self, phi: &RingMap) -> Result<Self> {
        let mut out = FormalGroupLaw { ring: phi.target().clone(), order: self.order, coeffs: BTreeMap::new() };
        for (&k, c) in &self.coeffs {
            out.insert(k, phi.apply(c)?)?;
        }
        let report = check_fgl_axioms(&out)?;
        if !report.all_pass() {
            return Err(Error::NotAFormalGroupLaw(report.summary()));
        }
        Ok(out)
    }
}

/// `Q[m_1, ..., m_n]` with `deg m_k = -k`.
pub fn lazard_ring(generators: usize) -> Arc<Ring> {
    Ring::new((1..=generators).map(|k| GradedVariable::new(format!("m{k}"), -(k as i64))).collect())
        .expect("distinct generator names")
}

/// The logarithm `u + sum_{k<order} m_k u^{k+1}` over `Q[m_1, ..., m_{order-1}]`.
pub fn universal_logarithm(order: usize) -> Result<TruncatedSeries> {
    if order < 2 {
        return Err(Error::OrderTooSmall(order));
    }
    let ring = lazard_ring(order - 1);
    let mut terms = vec![(vec![1u32], GradedPolynomial::one(&ring))];
    for k in 1..order {
        terms.push((vec![k as u32 + 1], GradedPolynomial::gen(&ring, k - 1)));
    }
    TruncatedSeries::from_terms(&ring, &["u"], order, terms)
}

fn build_universal(order: usize) -> Result<FormalGroupLaw> {
    let log = universal_logarithm(order)?;
    let exp = log.reverse()?;
    let ring = log.ring().clone();
    let u = TruncatedSeries::var(&ring, &UV, order, "u")?;
    let v = TruncatedSeries::var(&ring, &UV, order, "v")?;
    let sum = log.substitute(&[("u", &u)])?.add(&log.substitute(&[("u", &v)])?)?;
    FormalGroupLaw::from_series(&exp.substitute(&[("u", &sum)])?)
}

static UNIVERSAL: OnceLock<Mutex<HashMap<usize, Arc<FormalGroupLaw>>>> = OnceLock::new();

/// The universal law `exp(log u + log v)` over `Q[m_1, ..., m_{order-1}]`.
pub fn universal_fgl(order: usize) -> Result<Arc<FormalGroupLaw>> {
    if order < 2 {
        return Err(Error::OrderTooSmall(order));
    }
    let memo = UNIVERSAL.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = memo.lock().unwrap().get(&order) {
        return Ok(f.clone());
    }
    // built outside the lock; a racing thread may build the same value
    let built = Arc::new(build_universal(order)?);
    Ok(memo.lock().unwrap().entry(order).or_insert(built).clone())
}

pub fn beta_ring() -> Arc<Ring> {
    Ring::new(vec![GradedVariable::laurent("beta", -1)]).expect("single variable")
}

pub fn builtin_fgl(kind: BuiltinKind, order: usize) -> FormalGroupLaw {
    match kind {
        BuiltinKind::Additive => FormalGroupLaw::from_table(&Ring::scalars(), order, []).expect("empty table"),
        BuiltinKind::Multiplicative => {
            let ring = beta_ring();
            let beta = GradedPolynomial::gen(&ring, 0);
            FormalGroupLaw::from_table(&ring, order, [((1, 1), -&beta)]).expect("beta lives in the ring")
        }
    }
}

/// `m_k -> 0`, landing in the scalars.
pub fn additive_specialization(order: usize) -> Result<RingMap> {
    let source = lazard_ring(order.saturating_sub(1));
    let target = Ring::scalars();
    let assignments: Vec<_> = source.vars().iter().map(|v| (v.name.clone(), GradedPolynomial::zero(&target))).collect();
    RingMap::new(&source, &target, assignments)
}

/// `m_k -> beta^k / (k+1)`, the logarithm of `u + v - beta uv`.
pub fn multiplicative_specialization(generators: usize) -> Result<RingMap> {
    let source = lazard_ring(generators);
    let target = beta_ring();
    let beta = GradedPolynomial::gen(&target, 0);
    let assignments: Vec<_> =
        (1..=generators).map(|k| (format!("m{k}"), beta.pow(k as u32).scale(&frac(1, k as i64 + 1)))).collect();
    RingMap::new(&source, &target, assignments)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomWitness {
    /// Formal variables the exponent vector refers to.
    pub variables: Vec<String>,
    pub exponents: Vec<u32>,
    /// Coefficient of the offending monomial in (left side − right side).
    pub difference: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AxiomWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub order: usize,
    pub unitality: AxiomResult,
    pub commutativity: AxiomResult,
    pub associativity: AxiomResult,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.unitality.pass && self.commutativity.pass && self.associativity.pass
    }

    pub fn summary(&self) -> String {
        let mut failed = Vec::new();
        for (name, r) in [
            ("unitality", &self.unitality),
            ("commutativity", &self.commutativity),
            ("associativity", &self.associativity),
        ] {
            if let Some(w) = &r.witness {
                failed.push(format!("{name} fails at {:?} (difference {})", w.exponents, w.difference));
            }
        }
        if failed.is_empty() {
            "all axioms hold".into()
        } else {
            failed.join("; ")
        }
    }
}

/// Lowest total degree first, then the lexicographically largest exponent
/// vector (the graded-lex leading term).
fn first_offender(diff: &TruncatedSeries) -> AxiomResult {
    let first = diff.terms().min_by(|(a, _), (b, _)| {
        a.total_degree().cmp(&b.total_degree()).then_with(|| b.0.cmp(&a.0)).then(Ordering::Equal)
    });
    match first {
        None => AxiomResult { pass: true, witness: None },
        Some((m, c)) => AxiomResult {
            pass: false,
            witness: Some(AxiomWitness {
                variables: diff.vars().to_vec(),
                exponents: m.0.iter().map(|&e| e as u32).collect(),
                difference: c.to_string(),
            }),
        },
    }
}

pub fn check_fgl_axioms(f: &FormalGroupLaw) -> Result<AxiomReport> {
    let ring = f.ring();
    let n = f.order();
    let fs = f.series();

    let zero = TruncatedSeries::zero(ring, &["u"], n);
    let u = TruncatedSeries::var(ring, &["u"], n, "u")?;
    let left_unit = fs.substitute(&[("v", &zero)])?.sub(&u)?;
    let right_unit = fs.substitute(&[("u", &zero), ("v", &u)])?.sub(&u)?;
    // report whichever side fails first, as a two-variable witness
    let unit_diff = {
        let lift = |s: &TruncatedSeries, var: &str| -> Result<TruncatedSeries> {
            let x = TruncatedSeries::var(ring, &UV, n, var)?;
            s.substitute(&[("u", &x)])
        };
        lift(&left_unit, "u")?.add(&lift(&right_unit, "v")?)?
    };

    let swapped = fs.substitute(&[
        ("u", &TruncatedSeries::var(ring, &UV, n, "v")?),
        ("v", &TruncatedSeries::var(ring, &UV, n, "u")?),
    ])?;
    let comm_diff = fs.sub(&swapped)?;

    let x = |name: &str| TruncatedSeries::var(ring, &UVW, n, name);
    let f_uv = f.series_in(&UV).substitute(&[("u", &x("u")?), ("v", &x("v")?)])?;
    let f_vw = f.series_in(&UV).substitute(&[("u", &x("v")?), ("v", &x("w")?)])?;
    let left = fs.substitute(&[("u", &f_uv), ("v", &x("w")?)])?;
    let right = fs.substitute(&[("u", &x("u")?), ("v", &f_vw)])?;
    let assoc_diff = left.sub(&right)?;

    Ok(AxiomReport {
        order: n,
        unitality: first_offender(&unit_diff),
        commutativity: first_offender(&comm_diff),
        associativity: first_offender(&assoc_diff),
    })
}

/// `i(u)` with `F(u, i(u)) = 0`.
pub fn formal_inverse(f: &FormalGroupLaw) -> Result<TruncatedSeries> {
    let ring = f.ring();
    let n = f.order();
    let u = TruncatedSeries::var(ring, &["u"], n, "u")?;
    let mut inv = u.neg();
    let fs = f.series();
    for _ in 0..=n {
        let r = fs.substitute(&[("u", &u), ("v", &inv)])?;
        if r.is_zero() {
            return Ok(inv);
        }
        inv = inv.sub(&r)?;
    }
    Err(Error::NotAFormalGroupLaw("formal inverse did not converge".into()))
}

/// The `n`-fold formal sum `[n]_F(u)`.
pub fn n_series(f: &FormalGroupLaw, n: i64) -> Result<TruncatedSeries> {
    let ring = f.ring();
    let order = f.order();
    let u = TruncatedSeries::var(ring, &["u"], order, "u")?;
    let fs = f.series();
    let mut acc = TruncatedSeries::zero(ring, &["u"], order);
    for _ in 0..n.unsigned_abs() {
        acc = fs.substitute(&[("u", &acc), ("v", &u)])?;
    }
    if n < 0 {
        let inv = formal_inverse(f)?;
        acc = inv.substitute(&[("u", &acc)])?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientJson {
    pub i: u32,
    pub j: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalGroupLawJson {
    pub order: usize,
    pub variables: Vec<GradedVariable>,
    pub coefficients: Vec<CoefficientJson>,
}

impl FormalGroupLaw {
    pub fn to_json(&self) -> FormalGroupLawJson {
        FormalGroupLawJson {
            order: self.order,
            variables: self.ring.vars().to_vec(),
            coefficients: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| CoefficientJson { i, j, terms: terms_json(c) })
                .collect(),
        }
    }

    pub fn from_json(j: &FormalGroupLawJson) -> Result<Self> {
        let ring = Ring::new(j.variables.clone())?;
        let mut law = FormalGroupLaw { ring: ring.clone(), order: j.order, coeffs: BTreeMap::new() };
        for c in &j.coefficients {
            law.insert((c.i, c.j), terms_from_json(&ring, &c.terms)?)?;
        }
        Ok(law)
    }
}
