use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use torus_dense::group::GroupPresentation;
use torus_dense::real::Marker;
use torus_dense::solver::{member_t, TorusSubgroup, TorusVector};
use torus_dense::torus::{solve_arc, Arc, TorusElement};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn element() -> impl Strategy<Value = TorusElement> {
    (0i64..60, 1i64..30, -4i64..5, 1i64..6, 0u32..3).prop_map(|(n, d, c, e, m)| {
        TorusElement::from_ratio(n, d).add(&TorusElement::surd(Marker(m), q(c, e)))
    })
}

proptest! {
    #[test]
    fn cyclic_arithmetic_matches_remainders(a in -500i64..500, b in -500i64..500, n in -20i64..20, m in 2i64..40) {
        let g = GroupPresentation::new(1, vec![m.into()]).unwrap();
        let x = g.element_i64(&[a, a]).unwrap();
        let y = g.element_i64(&[b, b]).unwrap();
        let sum = g.add(&x, &y).unwrap();
        prop_assert_eq!(sum.coords(), &[BigInt::from(a + b), BigInt::from((a + b).rem_euclid(m))][..]);
        let scaled = g.scale(&n.into(), &x).unwrap();
        prop_assert_eq!(scaled.coords()[1].clone(), BigInt::from((n * a).rem_euclid(m)));
    }

    #[test]
    fn torus_values_round_trip_through_text(v in prop::collection::vec(element(), 1..4)) {
        let t = TorusVector::new(v);
        let back: TorusVector = t.to_string().parse().unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn arc_lifts_meet_every_conclusion(
        z in element(), zp in element(), m in 5i64..16, n in 1i64..16, s in 0i64..24, l in 12i64..25,
    ) {
        prop_assume!(n < m);
        let arc = Arc::new(q(s, 24), q(l, 24)).unwrap();
        let y = solve_arc(&arc, &z, &zp, &m.into(), &n.into()).unwrap();
        prop_assert_eq!(y.scale_i64(m), z);
        prop_assert_ne!(y.scale_i64(n), zp);
        prop_assert!(arc.contains(&y));
    }

    #[test]
    fn circle_membership_matches_enumeration(a in 0i64..30, b in 1i64..30, t in 0i64..60, d in 1i64..60) {
        let k = TorusSubgroup::new(1, vec![TorusVector::new(vec![TorusElement::from_ratio(a, b)])]);
        let v = TorusVector::new(vec![TorusElement::from_ratio(t, d)]);
        let brute = (0..b).any(|c| TorusElement::from_ratio(a * c, b) == TorusElement::from_ratio(t, d));
        prop_assert_eq!(member_t(&v, &k), brute);
    }
}
