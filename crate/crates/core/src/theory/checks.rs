use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::instance::{TheoryRing, TheorySpec};
use super::push::{k_class, structure_sheaf_euler_characteristic};
use crate::algebra::GradedPolynomial;
use crate::error::Result;
use crate::fgl::multiplicative_specialization;
use crate::genera::{class_in_lazard, exact_int, Report};
use crate::variety::{Ambient, Variety};

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    det
}

fn monomial_label(exps: &[usize]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// The presentation is free on `prod x_i^{e_i}`, `e_i <= n_i`: the relations
/// kill `x_i^{n_i+1}`, basis monomials survive reduction, and the pairing
/// `(a, b) -> coefficient of the top monomial in ab` is unimodular.
pub fn pb_basis_check(t: &TheoryRing) -> Report {
    let basis = t.basis();
    let dims = t.ambient().dims().to_vec();
    let mut relations_vanish = true;
    for (i, &n) in dims.iter().enumerate() {
        let mut e = vec![0; dims.len()];
        e[i] = n;
        relations_vanish &= t.mul(&t.x_monomial(&e), &t.x(i)).is_zero();
    }
    let survive = basis.iter().all(|e| !t.x_monomial(e).is_zero());
    let monomials: Vec<GradedPolynomial> = basis.iter().map(|e| t.x_monomial(e)).collect();
    let top: Vec<usize> = dims.clone();
    let gram: Vec<Vec<BigRational>> = monomials
        .iter()
        .map(|a| {
            monomials
                .iter()
                .map(|b| t.coefficient(&t.mul(a, b), &top).as_constant().unwrap_or_else(BigRational::zero))
                .collect()
        })
        .collect();
    let det = determinant(gram);
    let unimodular = det.abs().is_one();
    Report {
        check: "pb-basis".into(),
        inputs: json!({"theory": t.spec().kind.to_string(), "ambient": t.ambient().to_string()}),
        pass: relations_vanish && survive && unimodular && basis.len() == t.ambient().rank(),
        witness: json!({
            "basis": basis.iter().map(|e| monomial_label(e)).collect::<Vec<_>>(),
            "rank": basis.len(),
            "pairing_determinant": crate::genera::exact(&det),
        }),
    }
}

/// On `P^n` in K-theory, `c_1(L) = (1 - [L^dual]) beta^-1` satisfies
/// `c_1(O(a+b)) = F(c_1(O(a)), c_1(O(b)))` for `|a|, |b| <= 3` and agrees with
/// the `[a]`-series.
pub fn k0_c1_check(n: usize) -> Result<Report> {
    let spec = TheorySpec::k_theory(n.max(2));
    let t = TheoryRing::new(&spec, &Ambient::new(vec![n]))?;
    let beta_inv = t.scalar(&GradedPolynomial::var_inverse(spec.coefficient_ring(), "beta")?)?;
    let c1 = |a: i64| -> Result<GradedPolynomial> { Ok(t.mul(&(&t.one() - &k_class(&t, &[-a])?), &beta_inv)) };
    let mut failure = Value::Null;
    'outer: for a in -3..=3 {
        let ca = c1(a)?;
        if ca != t.c1_line_bundle(&[a])? {
            failure = json!({"a": a, "mismatch": "n-series", "c1": ca.to_string()});
            break;
        }
        for b in -3..=3 {
            let lhs = t.apply_fgl(&ca, &c1(b)?)?;
            let rhs = c1(a + b)?;
            if lhs != rhs {
                failure = json!({"a": a, "b": b, "F": lhs.to_string(), "c1": rhs.to_string()});
                break 'outer;
            }
        }
    }
    Ok(Report {
        check: "k0-c1".into(),
        inputs: json!({"n": n, "range": [-3, 3]}),
        pass: failure.is_null(),
        witness: if failure.is_null() { json!({"c1(O(2))": c1(2)?.to_string()}) } else { failure },
    })
}

/// The multiplicative image of `[V]` equals `beta^{dim V} chi(V, O_V)`.
pub fn cross_theory_check(v: &Variety) -> Result<Report> {
    let coords = class_in_lazard(v)?;
    let d = coords.dimension;
    let phi = multiplicative_specialization(coords.element.generators())?;
    let image = phi.apply(coords.element.value())?;
    let chi = structure_sheaf_euler_characteristic(v);
    let beta = GradedPolynomial::gen(phi.target(), 0);
    let expected = beta.pow(d as u32).scale(&BigRational::from_integer(chi.clone()));
    Ok(Report {
        check: "cross-theory".into(),
        inputs: json!({"variety": v.to_string(), "dimension": d}),
        pass: image == expected,
        witness: json!({
            "lazard_class": coords.element.to_string(),
            "multiplicative_image": image.to_string(),
            "chi": exact_int(&chi),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pb_bases() {
        for dims in [vec![2], vec![1, 1], vec![0], vec![2, 3]] {
            for spec in [TheorySpec::chow(8), TheorySpec::k_theory(8)] {
                let t = TheoryRing::new(&spec, &Ambient::new(dims.clone())).unwrap();
                assert!(pb_basis_check(&t).pass);
            }
        }
        let t = TheoryRing::new(&TheorySpec::chow(8), &Ambient::new(vec![1, 1])).unwrap();
        assert_eq!(pb_basis_check(&t).witness["basis"], json!(["1", "x1", "x2", "x1*x2"]));
    }

    #[test]
    fn k0_c1() {
        for n in 1..=4 {
            let r = k0_c1_check(n).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn cross_theory_spot_values() {
        for v in
            [Variety::projective_space(3), Variety::hypersurface(3, 3).unwrap(), Variety::hypersurface(3, 4).unwrap()]
        {
            assert!(cross_theory_check(&v).unwrap().pass);
        }
    }
}
