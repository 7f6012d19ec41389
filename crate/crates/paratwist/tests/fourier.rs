use paratwist::exact::{m2, rat, Cyclotomic, Mat2};
use paratwist::forms::{gritsenko_lift, phi10, LiftSource};
use paratwist::fourier::{
    compose_monomials, evaluate, from_json, materialize, point, reduce_level_one, relative_deviation, root_of_unity,
    slash_numeric, to_json, CoefficientSource, Expansion, FourierExpansion, Index, ReducedLookup, UpperBlock, Window,
};
use paratwist::groups::{probe_generators, symmetry_swap};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = paratwist::exact::Rational> {
    (-6i64..=6, prop::sample::select(vec![1i64, 3, 9, 27])).prop_map(|(n, d)| rat(n, d))
}

fn sym() -> impl Strategy<Value = Mat2> {
    (small_rat(), small_rat(), small_rat()).prop_map(|(a, b, c)| m2::new(a, b.clone(), b, c))
}

fn positive_det() -> impl Strategy<Value = Mat2> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("positive determinant", |(a, b, c, d)| a * d - b * c > 0)
        .prop_map(|(a, b, c, d)| m2::new(rat(a, 1), rat(b, 1), rat(c, 1), rat(d, 1)))
}

fn index() -> impl Strategy<Value = Index> {
    (0i64..12, 0i64..12, -20i64..20)
        .prop_map(|(n, m, r)| Index::new(n, r, m))
        .prop_filter("semidefinite", |t| t.is_semidefinite())
}

proptest! {
    #[test]
    fn slash_by_a_product_is_the_composite(
        q1 in sym(), p1 in positive_det(), q2 in sym(), p2 in positive_det(), t in index(), k in 1i64..12
    ) {
        let g1 = UpperBlock::monomial(&q1, &p1, k).unwrap();
        let g2 = UpperBlock::monomial(&q2, &p2, k).unwrap();
        let (q, p) = compose_monomials(&q1, &p1, &q2, &p2);
        let g = UpperBlock::monomial(&q, &p, k).unwrap();
        let tm = t.to_mat();
        let mid = g1.image(&tm);
        prop_assert_eq!(g.image(&tm), g2.image(&mid));
        prop_assert_eq!(g.factor(), &(g1.factor() * g2.factor()));
        let lhs = root_of_unity(&g.phase(&tm)).unwrap();
        let rhs = root_of_unity(&(g1.phase(&tm) + g2.phase(&mid))).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.preimage(&g.image(&tm)), tm);
    }

    #[test]
    fn json_round_trip(
        entries in prop::collection::vec((index(), -1000i64..1000, 0i64..81), 0..40),
        level in prop::sample::select(vec![1u64, 81]),
    ) {
        let mut f = FourierExpansion::new(20, level, Window::Box { n_max: 12, m_max: 12 });
        for (t, a, e) in entries {
            let t = Index::new(t.n * level as i64, t.r, t.m);
            if !f.window.contains(&t) {
                continue;
            }
            let v = Cyclotomic::zeta_power(3, 4, e).scale(&rat(a, 7));
            f.insert(t, v).unwrap();
        }
        let x = Expansion::Siegel(f);
        prop_assert_eq!(from_json(&to_json(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn reduction_preserves_the_class(t in index()) {
        let u = t.reduced();
        prop_assert_eq!(u.disc(), t.disc());
        prop_assert!(u.r >= 0 && u.r <= u.n && u.n <= u.m);
        prop_assert_eq!(u.reduced(), u);
    }
}

#[test]
fn reduced_lookup_extends_a_reduced_table() {
    let lift = LiftSource::new(phi10(4000));
    let classes = Index::reduced_classes(400);
    assert!(classes.iter().all(|t| t.reduced() == *t && t.disc() <= 400));
    let f = materialize(&lift, &Window::List(classes.into_iter().collect()));
    let lookup = ReducedLookup::new(&f).unwrap();
    for t in Index::semidefinite_box(30, 30, 1) {
        if t.is_definite() && t.disc() <= 400 {
            let expected = Cyclotomic::from_i64(lift.value(&t).unwrap() as i64);
            assert_eq!(lookup.coefficient(&t), Some(expected), "{t:?}");
        }
    }
    assert_eq!(lookup.coefficient(&Index::new(30, 1, 30)), None);
}

#[test]
fn materialize_drops_unknown_indices() {
    let table = phi10(40);
    let lift = LiftSource::new(table);
    let f = materialize(&lift, &Window::Box { n_max: 6, m_max: 6 });
    assert!(matches!(f.window, Window::List(_)));
    assert!(f.window.contains(&Index::new(1, 1, 1)));
    assert!(!f.window.contains(&Index::new(6, 0, 6)));
}

#[test]
fn chi10_is_invariant_numerically() {
    let f = gritsenko_lift(&phi10(20_000), 1, Window::Box { n_max: 24, m_max: 24 }).unwrap();
    let z = point([0.1, 0.05, -0.2], [1.6, 0.2, 1.7]);
    let v = evaluate(&f, &z, 1e-10).unwrap();
    assert!(v.value.norm() > 0.0);
    for g in probe_generators(1).iter().chain([&symmetry_swap()]) {
        let w = slash_numeric(&f, g, &z, 1e-10).unwrap();
        assert!(relative_deviation(v.value, w.value) < 1e-9, "{g}");
    }
    let far = point([3.4, -1.3, 7.2], [0.9, 0.1, 1.2]);
    let r = reduce_level_one(&far);
    let a = evaluate(&f, &far, 1e-10).unwrap().value;
    let b = evaluate(&f, &r, 1e-10).unwrap().value;
    assert!(relative_deviation(a, b) < 1e-9);
}

#[test]
fn evaluation_reports_an_insufficient_window() {
    let f = gritsenko_lift(&phi10(400), 1, Window::Box { n_max: 2, m_max: 2 }).unwrap();
    let z = point([0.0; 3], [0.6, 0.0, 0.6]);
    assert!(evaluate(&f, &z, 1e-10).is_err());
}
