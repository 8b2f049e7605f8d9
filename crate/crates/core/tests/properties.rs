use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;

use cobord::algebra::{frac, GradedPolynomial, GradedVariable, Monomial, Ring, TruncatedSeries};
use cobord::fgl::{check_fgl_axioms, lazard_ring, universal_fgl, RingMap};
use cobord::genera::{class_in_lazard, s_d_hom, FormalClass};
use cobord::variety::{chern_number, Ambient, ChowClass, Variety};

fn test_ring() -> Arc<Ring> {
    Ring::new(vec![GradedVariable::new("a", 1), GradedVariable::new("b", 2), GradedVariable::laurent("t", -1)]).unwrap()
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn polynomial() -> impl Strategy<Value = GradedPolynomial> {
    prop::collection::vec(((0i32..3, 0i32..3, -2i32..3), rational()), 0..5).prop_map(|terms| {
        let ring = test_ring();
        GradedPolynomial::from_terms(&ring, terms.into_iter().map(|((x, y, z), c)| (Monomial(vec![x, y, z]), c)))
            .unwrap()
    })
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(((0u32..4, 0u32..4), rational()), 0..6).prop_map(move |terms| {
        let ring = lazard_ring(0);
        TruncatedSeries::from_terms(
            &ring,
            &["u", "v"],
            order,
            terms.into_iter().map(|((i, j), c)| (vec![i, j], GradedPolynomial::constant(&ring, c))),
        )
        .unwrap()
    })
}

fn leaf() -> impl Strategy<Value = Variety> {
    prop_oneof![
        (1usize..=4).prop_map(Variety::projective_space),
        (1usize..=4, 1u32..=5).prop_map(|(n, a)| Variety::hypersurface(n + 1, a).unwrap()),
        (1usize..=3, 1usize..=3).prop_map(|(m, n)| Variety::milnor(m, n).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in polynomial(), b in polynomial(), c in polynomial()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &GradedPolynomial::one(&test_ring()), a.clone());
    }

    #[test]
    fn series_multiplication_is_associative(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn reversion_inverts_composition(coeffs in prop::collection::vec(rational(), 1..6)) {
        let ring = lazard_ring(0);
        let mut terms = vec![(vec![1u32], GradedPolynomial::one(&ring))];
        for (k, c) in coeffs.iter().enumerate() {
            terms.push((vec![k as u32 + 2], GradedPolynomial::constant(&ring, c.clone())));
        }
        let f = TruncatedSeries::from_terms(&ring, &["u"], 7, terms).unwrap();
        let g = f.reverse().unwrap();
        let u = TruncatedSeries::var(&ring, &["u"], 7, "u").unwrap();
        prop_assert_eq!(f.substitute(&[("u", &g)]).unwrap(), u.clone());
        prop_assert_eq!(g.substitute(&[("u", &f)]).unwrap(), u);
    }

    #[test]
    fn chow_ring_is_commutative_and_associative(
        x in prop::collection::vec(-3i64..=3, 2),
        y in prop::collection::vec(-3i64..=3, 2),
        z in prop::collection::vec(-3i64..=3, 2),
    ) {
        let amb = Ambient::new(vec![2, 3]);
        let (a, b, c) = (
            ChowClass::divisor(&amb, &x).add(&ChowClass::one(&amb)),
            ChowClass::divisor(&amb, &y).pow(2),
            ChowClass::divisor(&amb, &z),
        );
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn specializations_of_the_universal_law_are_laws(values in prop::collection::vec(rational(), 4)) {
        // m_k -> r_k t^k over Q[t, t^-1]
        let f = universal_fgl(5).unwrap();
        let target = Ring::new(vec![GradedVariable::laurent("t", -1)]).unwrap();
        let t = GradedPolynomial::gen(&target, 0);
        let phi = RingMap::new(
            f.ring(),
            &target,
            values.iter().enumerate().map(|(k, r)| (format!("m{}", k + 1), t.pow(k as u32 + 1).scale(r))),
        )
        .unwrap();
        let g = f.specialize(&phi).unwrap();
        prop_assert!(check_fgl_axioms(&g).unwrap().all_pass());
    }

    #[test]
    fn euler_characteristic_is_multiplicative(a in leaf(), b in leaf()) {
        let (da, db) = (a.dimension().unwrap(), b.dimension().unwrap());
        let chi = |v: &Variety, d: usize| chern_number(v, &[d]).unwrap();
        let prod = Variety::product(vec![a.clone(), b.clone()]);
        prop_assert_eq!(chi(&prod, da + db), chi(&a, da) * chi(&b, db));
    }

    #[test]
    fn lazard_class_is_a_ring_map(a in leaf(), b in leaf()) {
        prop_assume!(a.dimension().unwrap() + b.dimension().unwrap() <= 8);
        let prod = Variety::product(vec![a.clone(), b.clone()]);
        let lhs = class_in_lazard(&prod).unwrap().element;
        let rhs = &class_in_lazard(&a).unwrap().element * &class_in_lazard(&b).unwrap().element;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn s_d_is_linear(a in leaf(), c1 in rational(), c2 in rational()) {
        let x = FormalClass::new().with(c1.clone(), a.clone());
        let y = FormalClass::new().with(c2.clone(), a.clone());
        let s = cobord::variety::s_number(&a).unwrap();
        let expected = (c1 + c2) * BigRational::from_integer(s);
        prop_assert_eq!(s_d_hom(&x.add(&y)).unwrap(), expected);
    }
}
