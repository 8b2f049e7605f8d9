use std::fmt;

use super::chow::Ambient;
use crate::error::{Error, Result};

/// A generic complete intersection of hypersurfaces of the given multidegrees
/// in a product of projective spaces. Smoothness is assumed, not checked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompleteIntersection {
    ambient: Ambient,
    cuts: Vec<Vec<u32>>,
}

impl CompleteIntersection {
    pub fn new(ambient: Ambient, cuts: Vec<Vec<u32>>) -> Result<Self> {
        for cut in &cuts {
            if cut.len() != ambient.factors() {
                return Err(Error::InvalidVariety(format!(
                    "cut {cut:?} has {} entries for an ambient with {} factors",
                    cut.len(),
                    ambient.factors()
                )));
            }
            if cut.iter().all(|&a| a == 0) {
                return Err(Error::InvalidVariety(format!("cut {cut:?} has no positive entry")));
            }
        }
        let dim = ambient.dimension() as i64 - cuts.len() as i64;
        if dim < 0 {
            return Err(Error::NegativeDimension(dim));
        }
        Ok(CompleteIntersection { ambient, cuts })
    }

    pub fn projective_space(n: usize) -> Self {
        CompleteIntersection { ambient: Ambient::new(vec![n]), cuts: Vec::new() }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn cuts(&self) -> &[Vec<u32>] {
        &self.cuts
    }

    pub fn dimension(&self) -> usize {
        self.ambient.dimension() - self.cuts.len()
    }

    /// The product, again a complete intersection in the product ambient.
    pub fn product(&self, other: &Self) -> Self {
        let k1 = self.ambient.factors();
        let k2 = other.ambient.factors();
        let mut cuts = Vec::with_capacity(self.cuts.len() + other.cuts.len());
        for c in &self.cuts {
            let mut row = c.clone();
            row.extend(std::iter::repeat_n(0, k2));
            cuts.push(row);
        }
        for c in &other.cuts {
            let mut row = vec![0; k1];
            row.extend_from_slice(c);
            cuts.push(row);
        }
        CompleteIntersection { ambient: self.ambient.product(&other.ambient), cuts }
    }
}

/// A catalog variety: complete intersections closed under products and
/// disjoint unions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Variety {
    CompleteIntersection(CompleteIntersection),
    Product(Vec<Variety>),
    Union(Vec<Variety>),
}

impl From<CompleteIntersection> for Variety {
    fn from(ci: CompleteIntersection) -> Self {
        Variety::CompleteIntersection(ci)
    }
}

impl Variety {
    pub fn projective_space(n: usize) -> Self {
        CompleteIntersection::projective_space(n).into()
    }

    pub fn complete_intersection(dims: Vec<usize>, cuts: Vec<Vec<u32>>) -> Result<Self> {
        Ok(CompleteIntersection::new(Ambient::new(dims), cuts)?.into())
    }

    /// Degree-`a` hypersurface in `P^n`.
    pub fn hypersurface(n: usize, a: u32) -> Result<Self> {
        Self::complete_intersection(vec![n], vec![vec![a]])
    }

    /// The `(1,1)` hypersurface in `P^m x P^n`.
    pub fn milnor(m: usize, n: usize) -> Result<Self> {
        Self::complete_intersection(vec![m, n], vec![vec![1, 1]])
    }

    pub fn product(factors: Vec<Variety>) -> Self {
        Variety::Product(factors)
    }

    pub fn union(parts: Vec<Variety>) -> Self {
        Variety::Union(parts)
    }

    /// The disjoint components, each a single complete intersection.
    pub fn components(&self) -> Vec<CompleteIntersection> {
        match self {
            Variety::CompleteIntersection(ci) => vec![ci.clone()],
            Variety::Union(parts) => parts.iter().flat_map(Variety::components).collect(),
            Variety::Product(factors) => {
                let point = CompleteIntersection { ambient: Ambient::point(), cuts: Vec::new() };
                factors.iter().fold(vec![point], |acc, f| {
                    let comps = f.components();
                    acc.iter().flat_map(|a| comps.iter().map(move |b| a.product(b))).collect()
                })
            }
        }
    }

    /// Common dimension of all components; an empty union has dimension 0.
    pub fn dimension(&self) -> Result<usize> {
        let comps = self.components();
        let mut dims = comps.iter().map(CompleteIntersection::dimension);
        let Some(first) = dims.next() else { return Ok(0) };
        for d in dims {
            if d != first {
                return Err(Error::MixedDimension(first, d));
            }
        }
        Ok(first)
    }
}

impl fmt::Display for CompleteIntersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cuts.is_empty() {
            return write!(f, "{}", self.ambient);
        }
        write!(f, "V(")?;
        for (i, c) in self.cuts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ") in {}", self.ambient)
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, parts: &[Variety], sep: &str| -> fmt::Result {
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                match p {
                    Variety::CompleteIntersection(_) => write!(f, "{p}")?,
                    _ => write!(f, "({p})")?,
                }
            }
            Ok(())
        };
        match self {
            Variety::CompleteIntersection(ci) => write!(f, "{ci}"),
            Variety::Product(fs) if fs.is_empty() => write!(f, "pt"),
            Variety::Product(fs) => join(f, fs, " x "),
            Variety::Union(ps) if ps.is_empty() => write!(f, "empty"),
            Variety::Union(ps) => join(f, ps, " + "),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(matches!(
            Variety::complete_intersection(vec![1], vec![vec![1], vec![1]]),
            Err(Error::NegativeDimension(-1))
        ));
        assert!(matches!(Variety::complete_intersection(vec![2, 2], vec![vec![0, 0]]), Err(Error::InvalidVariety(_))));
        assert!(matches!(Variety::complete_intersection(vec![2, 2], vec![vec![1]]), Err(Error::InvalidVariety(_))));
    }

    #[test]
    fn product_is_padded_complete_intersection() {
        let cubic = CompleteIntersection::new(Ambient::new(vec![3]), vec![vec![3]]).unwrap();
        let h = CompleteIntersection::new(Ambient::new(vec![1, 2]), vec![vec![1, 1]]).unwrap();
        let p = cubic.product(&h);
        assert_eq!(p.ambient().dims(), &[3, 1, 2]);
        assert_eq!(p.cuts(), &[vec![3, 0, 0], vec![0, 1, 1]]);
        assert_eq!(p.dimension(), 4);
    }

    #[test]
    fn products_distribute_over_unions() {
        let v = Variety::product(vec![
            Variety::union(vec![Variety::projective_space(1), Variety::projective_space(1)]),
            Variety::projective_space(2),
        ]);
        assert_eq!(v.components().len(), 2);
        assert_eq!(v.dimension().unwrap(), 3);
    }

    #[test]
    fn mixed_dimension_union() {
        let v = Variety::union(vec![Variety::projective_space(1), Variety::projective_space(2)]);
        assert_eq!(v.dimension(), Err(Error::MixedDimension(1, 2)));
    }
}
