use num_traits::Zero;
use paratwist::charsum::{char_value, gauss_sum};
use paratwist::exact::{format_rational, int, parse_rational, rat, Cyclotomic, Rational};
use proptest::prelude::*;

fn cyclo(p: u64, e: u32) -> impl Strategy<Value = Cyclotomic> {
    let n = (p.pow(e)) as usize;
    prop::collection::vec((-20i64..=20, 1i64..=6), n).prop_map(move |v| {
        let coeffs: Vec<Rational> = v.into_iter().map(|(a, b)| rat(a, b)).collect();
        Cyclotomic::from_exponent_sums(p, e, &coeffs)
    })
}

fn add(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    a.try_add(b).unwrap()
}

fn mul(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    a.try_mul(b).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms_mod_9(a in cyclo(3, 2), b in cyclo(3, 2), c in cyclo(3, 2)) {
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
    }

    #[test]
    fn mixed_levels_embed(a in cyclo(3, 1), b in cyclo(3, 2)) {
        let s = add(&a, &b);
        prop_assert_eq!(s.order(), 9);
        let diff = (s.to_complex() - a.to_complex() - b.to_complex()).norm();
        prop_assert!(diff < 1e-9);
    }

    #[test]
    fn galois_is_a_ring_map(a in cyclo(5, 1), b in cyclo(5, 1), t in 1i64..5) {
        prop_assert_eq!(mul(&a, &b).galois(t), mul(&a.galois(t), &b.galois(t)));
        prop_assert!((a.conj().to_complex() - a.to_complex().conj()).norm() < 1e-9);
    }

    #[test]
    fn complex_embedding_is_multiplicative(a in cyclo(3, 2), b in cyclo(3, 2)) {
        let lhs = mul(&a, &b).to_complex();
        let rhs = a.to_complex() * b.to_complex();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
}

#[test]
fn zeta_power_relations() {
    let z = Cyclotomic::zeta_power(3, 4, 1);
    let mut acc = Cyclotomic::from_i64(1);
    for _ in 0..81 {
        acc = mul(&acc, &z);
    }
    assert_eq!(acc, Cyclotomic::from_i64(1));
    let sum = (0..81).fold(Cyclotomic::from_i64(0), |s, t| add(&s, &Cyclotomic::zeta_power(3, 4, t)));
    assert!(sum.is_zero());
    assert_eq!(Cyclotomic::zeta_power(3, 4, 27), Cyclotomic::zeta_power(3, 1, 1));
}

#[test]
fn gauss_sums_square_to_signed_p() {
    for p in [3u64, 5, 7, 11, 13, 17] {
        let w = gauss_sum(p);
        assert_eq!(mul(&w, &w), Cyclotomic::from_i64(char_value(p, -1) * p as i64));
    }
    let w3 = gauss_sum(3);
    assert!((w3.to_complex() - num_complex::Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
}

#[test]
fn rationals_have_exact_inverses() {
    let x = rat(-7, 12);
    assert_eq!(&x * x.recip(), int(1));
    assert!((x.clone() - x).is_zero());
}
