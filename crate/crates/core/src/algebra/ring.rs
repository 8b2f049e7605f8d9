use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named polynomial variable with a fixed weighted degree.
///
/// A `laurent` variable carries a formal inverse: its exponent may be
/// negative and `x * x^-1` collapses to `1` as soon as it is formed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedVariable {
    pub name: String,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub laurent: bool,
}

impl GradedVariable {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        GradedVariable { name: name.into(), degree, laurent: false }
    }

    pub fn laurent(name: impl Into<String>, degree: i64) -> Self {
        GradedVariable { name: name.into(), degree, laurent: true }
    }
}

/// An ordered declaration of variables; coefficients are always exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<GradedVariable>,
}

impl Ring {
    pub fn new(vars: Vec<GradedVariable>) -> Result<Arc<Ring>> {
        let mut seen = HashSet::new();
        for v in &vars {
            if v.name.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if !seen.insert(v.name.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{}`", v.name)));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// The ring with no variables (the rationals, or the integers when every
    /// coefficient happens to be integral).
    pub fn scalars() -> Arc<Ring> {
        Arc::new(Ring { vars: Vec::new() })
    }

    pub fn vars(&self) -> &[GradedVariable] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn var(&self, i: usize) -> &GradedVariable {
        &self.vars[i]
    }

    /// Weighted degree of an exponent vector.
    pub fn weight(&self, exps: &[i32]) -> i64 {
        self.vars.iter().zip(exps).map(|(v, &e)| v.degree * i64::from(e)).sum()
    }

    /// Appends `other`'s variables after this ring's.
    pub fn extend(&self, other: &[GradedVariable]) -> Result<Arc<Ring>> {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(other);
        Ring::new(vars)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[")?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if v.laurent {
                write!(f, "{}^±1 (deg {})", v.name, v.degree)?;
            } else {
                write!(f, "{} (deg {})", v.name, v.degree)?;
            }
        }
        write!(f, "]")
    }
}

/// An exponent vector ordered by total degree, then reverse-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| i64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                // grevlex: the larger monomial has the smaller exponent in the
                // last variable where they differ
                for (a, b) in self.0.iter().zip(&other.0).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        let r = Ring::new(vec![GradedVariable::new("x", 1), GradedVariable::new("x", 2)]);
        assert!(matches!(r, Err(Error::InvalidRing(_))));
    }

    #[test]
    fn grevlex_order() {
        // x > y > z in degree 2: x^2 > xy > y^2 > xz > yz > z^2
        let ms = [vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 0], vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 2]];
        for w in ms.windows(2) {
            assert!(Monomial(w[0].clone()) > Monomial(w[1].clone()), "{:?} vs {:?}", w[0], w[1]);
        }
        assert!(Monomial(vec![0, 0, 3]) > Monomial(vec![2, 0, 0]));
    }
}
