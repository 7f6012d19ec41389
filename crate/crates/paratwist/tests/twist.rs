use paratwist::charsum::{char_value, gauss_sum};
use paratwist::exact::{rat, Cyclotomic, Rational};
use paratwist::forms::{delta_qexp, eisenstein_qexp, phi10, LiftSource, ProductSource};
use paratwist::fourier::{EllipticExpansion, FourierExpansion, Index, Window};
use paratwist::properties::oracle_equality;
use paratwist::twist::gl2::{gl2_hecke, gl2_twist_closed, gl2_twist_slash};
use paratwist::twist::{apply_twist, oracle_forward, TwistError, TwistPlan};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unbounded(weight: i64) -> FourierExpansion {
    FourierExpansion::new(weight, 1, Window::Box { n_max: 1 << 40, m_max: 1 << 40 })
}

fn small_index() -> impl Strategy<Value = Index> {
    (1i64..=3, 1i64..=3, -6i64..=6)
        .prop_map(|(n, m, r)| Index::new(n, r, m))
        .prop_filter("semidefinite", |t| t.is_semidefinite())
}

#[test]
fn plan_matches_forward_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let r = oracle_equality(12, 3, &mut rng).unwrap();
    assert!(r.passed, "{r:?}");
}

#[test]
fn forward_images_off_the_lattice_cancel() {
    for t in [Index::new(1, 1, 1), Index::new(2, 1, 3), Index::new(3, 0, 1), Index::new(1, 0, 0)] {
        let f = oracle_forward(&[(t, 1)], 3, 10, 1);
        assert!(f.off_lattice_cancels(), "{t:?}");
        assert!(f.lattice.keys().all(|k| k.on_level(81)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn twist_is_linear(s in small_index(), t in small_index(), a in -9i64..=9, b in -9i64..=9) {
        let plan = TwistPlan::new(3, 10).unwrap();
        let mut f = unbounded(10);
        let mut g = unbounded(10);
        let mut h = unbounded(10);
        f.insert(s, Cyclotomic::from_i64(1)).unwrap();
        g.insert(t, Cyclotomic::from_i64(1)).unwrap();
        let mut combined = Cyclotomic::from_i64(a);
        if s == t {
            combined = combined.try_add(&Cyclotomic::from_i64(b)).unwrap();
            h.insert(s, combined).unwrap();
        } else {
            h.insert(s, Cyclotomic::from_i64(a)).unwrap();
            h.insert(t, Cyclotomic::from_i64(b)).unwrap();
        }
        let outputs = Index::semidefinite_box(81, 2, 81);
        let tf = apply_twist(&f, &plan, &outputs).unwrap();
        let tg = apply_twist(&g, &plan, &outputs).unwrap();
        let th = apply_twist(&h, &plan, &outputs).unwrap();
        for o in &outputs {
            let expected = tf.get(o).scale(&rat(a, 1)).try_add(&tg.get(o).scale(&rat(b, 1))).unwrap();
            prop_assert_eq!(th.get(o), expected);
        }
    }

    #[test]
    fn gl2_twist_closed_form_on_random_series(
        coeffs in prop::collection::vec(-1000i128..1000, 30),
        p in prop::sample::select(vec![3u64, 5, 7, 11]),
        weight in (1i64..8).prop_map(|k| 2 * k),
    ) {
        let f = EllipticExpansion::from_integers(weight, 1, &coeffs);
        prop_assert_eq!(gl2_twist_slash(&f, p).unwrap(), gl2_twist_closed(&f, p).unwrap());
    }
}

#[test]
fn gl2_twist_of_delta() {
    let delta = delta_qexp(40);
    let g = gl2_twist_closed(&delta, 3).unwrap();
    assert_eq!(g.level, 9);
    let w = gauss_sum(3);
    assert_eq!(g.get(2), w.scale(&rat(24, 1)));
    assert!(g.get(3).is_zero());
    for ell in [2u64, 5] {
        let lhs = gl2_hecke(&g, ell).unwrap();
        let rhs = gl2_twist_closed(&gl2_hecke(&delta, ell).unwrap(), 3).unwrap();
        let chi = char_value(3, ell as i64);
        let n = lhs.truncation().min(rhs.truncation());
        for k in 1..n {
            assert_eq!(lhs.get(k), rhs.get(k).scale(&rat(chi, 1)), "l = {ell}, q^{k}");
        }
    }
    let e6 = eisenstein_qexp(6, 30);
    assert_eq!(gl2_twist_slash(&e6, 5).unwrap(), gl2_twist_closed(&e6, 5).unwrap());
}

#[test]
fn plans_reject_bad_primes() {
    assert!(matches!(TwistPlan::new(2, 10), Err(TwistError::BadPrime(2))));
    assert!(matches!(TwistPlan::new(9, 10), Err(TwistError::BadPrime(9))));
    let delta = delta_qexp(10);
    let g = gl2_twist_closed(&delta, 3).unwrap();
    assert!(gl2_twist_closed(&g, 3).is_err());
}

#[test]
fn chi10_twist_vanishes_and_its_square_does_not() {
    let lift = LiftSource::new(phi10(20_000));
    let outputs = Index::semidefinite_box(81, 1, 81);
    let t10 = apply_twist(&lift, &TwistPlan::new(3, 10).unwrap(), &outputs).unwrap();
    assert_eq!(t10.window.indices(81).len(), outputs.len());
    assert!(t10.is_zero());

    let square = ProductSource::new(&lift, &lift).unwrap();
    let t20 = apply_twist(&square, &TwistPlan::new(3, 20).unwrap(), &outputs).unwrap();
    assert_eq!(t20.window.indices(81).len(), outputs.len());
    assert_eq!(t20.coefficients.len(), 35);
    assert!(t20.support_lattice_check(81));

    let pinned = Cyclotomic::zeta_power(3, 4, 27)
        .scale(&rat(-51_782_016, 1))
        .try_add(&Cyclotomic::from_i64(-25_891_008))
        .unwrap();
    assert_eq!(t20.get(&Index::new(81, -15, 1)), pinned);

    let w = gauss_sum(3);
    for (idx, v) in &t20.coefficients {
        let over_w: Option<Rational> = v.try_mul(&w).unwrap().to_rational();
        assert!(over_w.is_some(), "{idx:?} is not a rational multiple of W(chi)");
        assert_eq!(t20.get(&Index::new(idx.n, -idx.r, idx.m)), *v);
    }
}
