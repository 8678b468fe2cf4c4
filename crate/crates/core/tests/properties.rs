use proptest::prelude::*;
use transtan_core::classify22::{asymmetric_model, check_exclusion, normal_form, orbit, NormalFormKind};
use transtan_core::configurations::recover_sphere_affine;
use transtan_core::envelope::{affine_sphere_curve, phi};
use transtan_core::poly::Mobius;
use transtan_core::projgeom::{incidence_form, transversal_through, LinePair, ProjPoint};
use transtan_core::quadrics::{tangency_value, Quadric, Sphere};
use transtan_core::Scalar;

fn rat() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    rat().prop_filter("nonzero", |x| !x.is_zero())
}

fn point() -> impl Strategy<Value = ProjPoint> {
    prop::array::uniform4(rat()).prop_filter_map("nonzero", |v| ProjPoint::new(v).ok())
}

fn pair() -> impl Strategy<Value = LinePair> {
    (point(), point(), point(), point()).prop_filter_map("skew", |(a, b, c, d)| LinePair::from_points(a, b, c, d).ok())
}

fn p1() -> impl Strategy<Value = [Scalar; 2]> {
    (rat(), rat()).prop_filter("nonzero", |(a, b)| !a.is_zero() || !b.is_zero()).prop_map(|(a, b)| [a, b])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn transversals_meet_both_lines(pair in pair(), u in p1(), v in p1()) {
        let l = transversal_through(&pair, &u, &v);
        prop_assert!(l.relation().is_zero());
        prop_assert!(incidence_form(&l, &pair.l1).is_zero());
        prop_assert!(incidence_form(&l, &pair.l2).is_zero());
    }

    #[test]
    fn phi_vanishes_exactly_on_tangent_transversals(pair in pair(), labels in prop::array::uniform10(rat()), u in p1(), v in p1()) {
        let Ok(q) = Quadric::from_labels(&labels) else { return Ok(()) };
        let f = phi(&pair, &q).unwrap();
        let l = transversal_through(&pair, &u, &v);
        let lhs = f.map(|f| f.eval(&u, &v)).unwrap_or_else(Scalar::zero);
        prop_assert_eq!(lhs, tangency_value(&q, &l));
    }

    #[test]
    fn affine_recovery_inverts_the_curve(delta in nonzero(), c in prop::array::uniform3(rat()), r2 in (1i64..=20, 1i64..=6).prop_map(|(n, d)| Scalar::from_ratio(n, d)), k in nonzero()) {
        let s = Sphere::new(c, r2).unwrap();
        let curve = affine_sphere_curve(&delta, &s).unwrap().scale(&k);
        prop_assert_eq!(recover_sphere_affine(&curve, &delta).unwrap(), s);
    }

    #[test]
    fn normal_form_is_invariant_under_reparameterization(
        s in nonzero(), t in nonzero(),
        m1 in prop::array::uniform4(-4i64..=4), m2 in prop::array::uniform4(-4i64..=4),
    ) {
        prop_assume!(check_exclusion(&s, &t).is_ok());
        let (Ok(a), Ok(b)) = (Mobius::from_ints(m1[0], m1[1], m1[2], m1[3]), Mobius::from_ints(m2[0], m2[1], m2[2], m2[3])) else {
            return Ok(());
        };
        let g = asymmetric_model(&s, &t).reparameterize(&a, &b);
        let nf = normal_form(&g).unwrap();
        let NormalFormKind::Asymmetric { s: s2, t: t2 } = nf.kind else { panic!("symmetric") };
        prop_assert!(orbit(&s, &t).contains(&(s2, t2)));
    }
}
