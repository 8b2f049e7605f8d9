use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::sd::FormalClass;
use crate::algebra::{rat, GradedPolynomial};
use crate::error::{Error, Result};
use crate::fgl::{lazard_ring, LazardElement};
use crate::variety::{chern_numbers, partition_label, partitions, Variety};

pub const DEFAULT_DIMENSION_BOUND: usize = 8;

/// Products of projective spaces indexed by the partitions of `d`, with the
/// matrix of their Chern numbers and its inverse.
#[derive(Debug, Clone)]
pub struct PartitionBasis {
    pub dimension: usize,
    pub partitions: Vec<Vec<usize>>,
    /// `matrix[mu][lambda] = c_mu[P^lambda]`.
    pub matrix: Vec<Vec<BigRational>>,
    inverse: Vec<Vec<BigRational>>,
    /// `[P^lambda] = prod (lambda_i + 1) m_{lambda_i}`.
    pub classes: Vec<LazardElement>,
}

pub fn projective_product(partition: &[usize]) -> Variety {
    Variety::product(partition.iter().map(|&n| Variety::projective_space(n)).collect())
}

fn invert(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_vec(m: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

impl PartitionBasis {
    fn build(d: usize) -> Result<Self> {
        let parts = partitions(d);
        let n = parts.len();
        let mut matrix = vec![vec![BigRational::zero(); n]; n];
        let ring = lazard_ring(d);
        let mut classes = Vec::with_capacity(n);
        for (col, lambda) in parts.iter().enumerate() {
            let numbers = chern_numbers(&projective_product(lambda))?;
            for (row, (_, c)) in numbers.values.iter().enumerate() {
                matrix[row][col] = BigRational::from_integer(c.clone());
            }
            let mut class = GradedPolynomial::one(&ring);
            for &k in lambda {
                class = &class * &GradedPolynomial::gen(&ring, k - 1).scale(&rat(k as i64 + 1));
            }
            classes.push(LazardElement::new(class)?);
        }
        let inverse = invert(&matrix).ok_or(Error::SingularBasis(d))?;
        Ok(PartitionBasis { dimension: d, partitions: parts, matrix, inverse, classes })
    }

    /// Shared basis for dimension `d`, built once.
    pub fn get(d: usize) -> Result<Arc<PartitionBasis>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PartitionBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(b) = cache.lock().unwrap().get(&d) {
            return Ok(b.clone());
        }
        let built = Arc::new(Self::build(d)?);
        Ok(cache.lock().unwrap().entry(d).or_insert(built).clone())
    }

    /// Solves `M x = b`, asserting the reconstruction reproduces `b`.
    pub fn solve(&self, b: &[BigRational]) -> Result<Vec<BigRational>> {
        let x = mat_vec(&self.inverse, b);
        if mat_vec(&self.matrix, &x) != b {
            return Err(Error::OracleDisagreement(format!(
                "Chern numbers of the reconstruction differ in dimension {}",
                self.dimension
            )));
        }
        Ok(x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazardCoordinates {
    pub dimension: usize,
    /// Coefficient of each `[P^lambda]`, in partition order.
    pub coordinates: Vec<(Vec<usize>, BigRational)>,
    pub element: LazardElement,
}

impl LazardCoordinates {
    /// `6*[P1xP1] - 5*[P2]`: finest partitions first, zero coordinates omitted.
    pub fn basis_expression(&self) -> String {
        let label = |p: &[usize]| {
            if p.is_empty() {
                "[pt]".to_string()
            } else {
                let names: Vec<String> = p.iter().map(|n| format!("P{n}")).collect();
                format!("[{}]", names.join("x"))
            }
        };
        let terms: Vec<(String, &BigRational)> =
            self.coordinates.iter().rev().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (label(p), c)).collect();
        let mut s = String::new();
        crate::algebra::poly::write_signed_terms(&mut s, terms.into_iter()).expect("writing to a string");
        s
    }
}

#[derive(Serialize)]
struct CoordinateJson {
    partition: Vec<usize>,
    label: String,
    coefficient: serde_json::Value,
}

impl LazardCoordinates {
    pub fn to_json(&self) -> serde_json::Value {
        let coords: Vec<CoordinateJson> = self
            .coordinates
            .iter()
            .map(|(p, c)| CoordinateJson {
                partition: p.clone(),
                label: partition_label(p),
                coefficient: super::report::exact(c),
            })
            .collect();
        serde_json::json!({
            "dimension": self.dimension,
            "coordinates": coords,
            "element": self.element.to_json(),
        })
    }
}

/// Coordinates of `[V]` in `Lambda (x) Q`, for `dim V` up to `bound`.
pub fn class_in_lazard_bounded(v: &Variety, bound: usize) -> Result<LazardCoordinates> {
    let numbers = chern_numbers(v)?;
    let d = numbers.dimension;
    if d > bound {
        return Err(Error::DimensionBound { dim: d, bound });
    }
    let basis = PartitionBasis::get(d)?;
    let b: Vec<BigRational> = numbers.values.iter().map(|(_, c)| BigRational::from_integer(c.clone())).collect();
    let x = basis.solve(&b)?;
    let mut element = LazardElement::zero(d);
    for (c, class) in x.iter().zip(&basis.classes) {
        element = &element + &class.scale(c);
    }
    Ok(LazardCoordinates { dimension: d, coordinates: basis.partitions.iter().cloned().zip(x).collect(), element })
}

pub fn class_in_lazard(v: &Variety) -> Result<LazardCoordinates> {
    class_in_lazard_bounded(v, DEFAULT_DIMENSION_BOUND)
}

/// `sum a_i [V_i]` in `Lambda (x) Q`.
pub fn formal_class_in_lazard(c: &FormalClass) -> Result<LazardElement> {
    let d = c.dimension()?.unwrap_or(0);
    let mut acc = LazardElement::zero(d);
    for (a, v) in &c.terms {
        acc = &acc + &class_in_lazard(v)?.element.scale(a);
    }
    Ok(acc)
}

/// Integer Chern numbers of a formal class, in partition order.
pub fn formal_chern_numbers(c: &FormalClass, d: usize) -> Result<Vec<(Vec<usize>, BigRational)>> {
    let mut acc: Vec<(Vec<usize>, BigRational)> = partitions(d).into_iter().map(|p| (p, BigRational::zero())).collect();
    for (a, v) in &c.terms {
        let numbers = chern_numbers(v)?;
        if numbers.dimension != d {
            return Err(Error::MixedDimension(d, numbers.dimension));
        }
        for ((_, s), (_, x)) in acc.iter_mut().zip(&numbers.values) {
            *s += a * BigRational::from_integer(x.clone());
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases_invertible_to_eight() {
        for d in 0..=8 {
            let b = PartitionBasis::get(d).unwrap();
            assert_eq!(b.partitions.len(), partitions(d).len());
        }
    }

    #[test]
    fn projective_spaces() {
        for n in 1..=8 {
            let c = class_in_lazard(&Variety::projective_space(n)).unwrap();
            assert_eq!(c.element, LazardElement::m(n).scale(&rat(n as i64 + 1)));
        }
    }

    #[test]
    fn cubic_surface() {
        let cubic = Variety::hypersurface(3, 3).unwrap();
        let c = class_in_lazard(&cubic).unwrap();
        assert_eq!(c.basis_expression(), "6*[P1xP1] - 5*[P2]");
        assert_eq!(c.element.to_string(), "24*m1^2 - 15*m2");
    }

    #[test]
    fn bound() {
        let p9 = Variety::projective_space(9);
        assert_eq!(class_in_lazard(&p9), Err(Error::DimensionBound { dim: 9, bound: 8 }));
        assert!(class_in_lazard_bounded(&p9, 9).is_ok());
    }
}
