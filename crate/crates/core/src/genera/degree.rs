use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::coords::{formal_chern_numbers, formal_class_in_lazard};
use super::report::{exact, exact_int, Report};
use super::sd::{is_adams_dimension, is_prime, FormalClass};
use crate::error::{Error, Result};
use crate::fgl::LazardElement;
use crate::variety::{partition_label, s_number, Variety};

/// A morphism `source -> target` known only through its asserted degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDatum {
    pub source: Variety,
    pub target: Variety,
    pub degree: BigInt,
}

impl MorphismDatum {
    pub fn new(source: Variety, target: Variety, degree: impl Into<BigInt>) -> Self {
        MorphismDatum { source, target, degree: degree.into() }
    }

    fn dimension(&self) -> Result<usize> {
        let (s, t) = (self.source.dimension()?, self.target.dimension()?);
        if s != t {
            return Err(Error::MixedDimension(s, t));
        }
        Ok(s)
    }
}

fn describe(c: &FormalClass) -> Value {
    Value::Array(c.terms.iter().map(|(a, v)| json!({"coefficient": exact(a), "variety": v.to_string()})).collect())
}

/// Checks `[source] - deg [target] = sum a_i [B_i]` after pushing to the
/// point, by comparing every Chern number; the witness is the first
/// partition where the two sides differ.
pub fn gdf_verify(lhs: &MorphismDatum, decomposition: &FormalClass) -> Result<Report> {
    let d = lhs.dimension()?;
    if let Some(e) = decomposition.dimension()? {
        if e != d {
            return Err(Error::MixedDimension(d, e));
        }
    }
    let degree = BigRational::from_integer(lhs.degree.clone());
    let left_class = FormalClass::of(lhs.source.clone()).with(-degree, lhs.target.clone());
    let left = formal_chern_numbers(&left_class, d)?;
    let right = formal_chern_numbers(decomposition, d)?;
    let discrepancy = left.iter().zip(&right).find(|((_, a), (_, b))| a != b);

    // the same comparison in Lazard coordinates must agree
    let lazard_equal: bool =
        formal_class_in_lazard(&left_class)? == formal_class_in_lazard(decomposition)?.extend_to(d)?;
    if lazard_equal != discrepancy.is_none() {
        return Err(Error::OracleDisagreement("Chern numbers and Lazard coordinates disagree".into()));
    }

    let witness = match discrepancy {
        None => Value::Null,
        Some(((p, a), (_, b))) => json!({
            "chern_number": partition_label(p),
            "partition": p,
            "lhs": exact(a),
            "decomposition": exact(b),
        }),
    };
    Ok(Report {
        check: "gdf".into(),
        inputs: json!({
            "source": lhs.source.to_string(),
            "target": lhs.target.to_string(),
            "degree": exact_int(&lhs.degree),
            "decomposition": describe(decomposition),
        }),
        pass: discrepancy.is_none(),
        witness,
    })
}

/// Verifies `s_d(source) - deg * s_d(target) = p * deg(eta)`; without an
/// asserted `eta_degree` only divisibility by `p` is required.
pub fn rost_check(f: &MorphismDatum, p: u64, eta_degree: Option<&BigInt>) -> Result<Report> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = f.dimension()?;
    if !is_adams_dimension(d, p) {
        return Err(Error::NotPrimePowerDimension { dim: d, p });
    }
    let sy = s_number(&f.source)?;
    let sx = s_number(&f.target)?;
    let delta = &sy - &f.degree * &sx;
    let (implied, r) = delta.div_rem(&BigInt::from(p));
    let divisible = r.is_zero();
    let matches = eta_degree.is_none_or(|e| divisible && *e == implied);
    Ok(Report {
        check: "rost".into(),
        inputs: json!({
            "source": f.source.to_string(),
            "target": f.target.to_string(),
            "degree": exact_int(&f.degree),
            "p": p,
            "dimension": d,
            "eta_degree": eta_degree.map(exact_int),
        }),
        pass: divisible && matches,
        witness: json!({
            "s_source": exact_int(&sy),
            "s_target": exact_int(&sx),
            "delta": exact_int(&delta),
            "implied_eta_degree": if divisible { exact_int(&implied) } else { Value::Null },
        }),
    })
}

/// `[source] - deg [target]` as an element of `Lambda (x) Q`.
pub fn degree_defect(f: &MorphismDatum) -> Result<LazardElement> {
    let c = FormalClass::of(f.source.clone()).with(-BigRational::from_integer(f.degree.clone()), f.target.clone());
    formal_class_in_lazard(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p1xp1() -> Variety {
        Variety::product(vec![Variety::projective_space(1), Variety::projective_space(1)])
    }

    #[test]
    fn quadric_is_p1xp1() {
        let f = MorphismDatum::new(Variety::hypersurface(3, 2).unwrap(), p1xp1(), 1);
        assert!(gdf_verify(&f, &FormalClass::new()).unwrap().pass);
    }

    #[test]
    fn cubic_surface_decomposition() {
        let f = MorphismDatum::new(Variety::hypersurface(3, 3).unwrap(), Variety::projective_space(2), 1);
        let good = FormalClass::new().with(rat(6), p1xp1()).with(rat(-6), Variety::projective_space(2));
        assert!(gdf_verify(&f, &good).unwrap().pass);
        let bad = FormalClass::new().with(rat(6), p1xp1()).with(rat(-5), Variety::projective_space(2));
        let r = gdf_verify(&f, &bad).unwrap();
        assert!(!r.pass);
        assert_eq!(r.witness["chern_number"], "c2");
    }

    #[test]
    fn rost_cubic_surface() {
        let f = MorphismDatum::new(Variety::hypersurface(3, 3).unwrap(), Variety::projective_space(2), 1);
        let r = rost_check(&f, 3, None).unwrap();
        assert!(r.pass);
        assert_eq!(r.witness["delta"], -18);
        assert_eq!(r.witness["implied_eta_degree"], -6);
        assert!(!rost_check(&f, 3, Some(&BigInt::from(-5))).unwrap().pass);
        assert!(matches!(rost_check(&f, 2, None), Err(Error::NotPrimePowerDimension { .. })));
    }

    #[test]
    fn rost_non_dominant() {
        let y = Variety::product(vec![Variety::projective_space(1), Variety::projective_space(2)]);
        let f = MorphismDatum::new(y, Variety::hypersurface(4, 2).unwrap(), 0);
        let r = rost_check(&f, 2, None).unwrap();
        assert!(r.pass);
        assert_eq!(r.witness["delta"], 0);
    }
}
