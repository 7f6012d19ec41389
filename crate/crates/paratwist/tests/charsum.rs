use paratwist::charsum::{
    char_value, gauss_sum, hecke_factorization, quadratic_product, twisted_gauss_sum, verify_sum_identity,
    SUM_IDENTITIES,
};
use proptest::prelude::*;

fn euler_criterion(p: u64, u: i64) -> i64 {
    let u = u.rem_euclid(p as i64) as u64;
    if u == 0 {
        return 0;
    }
    let mut acc = 1u64;
    for _ in 0..(p - 1) / 2 {
        acc = acc * u % p;
    }
    if acc == 1 { 1 } else { -1 }
}

proptest! {
    #[test]
    fn legendre_symbol_matches_euler(p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 101]), u in -500i64..500, v in -500i64..500) {
        prop_assert_eq!(char_value(p, u), euler_criterion(p, u));
        prop_assert_eq!(char_value(p, u * v), char_value(p, u) * char_value(p, v));
    }

    #[test]
    fn twisted_gauss_sums(p in prop::sample::select(vec![3u64, 5, 7, 11]), n in -50i64..50) {
        prop_assert_eq!(twisted_gauss_sum(p, n), gauss_sum(p).scale(&paratwist::exact::int(char_value(p, n))));
    }

    #[test]
    fn local_components_multiply_out(m in 2u64..3000, a in -10_000i64..10_000) {
        prop_assume!(num_integer::gcd(a.unsigned_abs(), m) == 1);
        let chi = |x: i64| quadratic_product(m, x);
        let parts = hecke_factorization(m, a, chi);
        prop_assert_eq!(parts.iter().map(|(_, v)| v).product::<i64>(), chi(a));
    }
}

#[test]
fn finite_identities_at_three() {
    for name in SUM_IDENTITIES {
        let r = verify_sum_identity(name, 3).unwrap();
        assert!(r.as_expected(), "{r:?}");
        assert_eq!(r.passed, !name.ends_with("-wrong-sign"), "{name}");
    }
}

#[test]
fn finite_identities_at_larger_primes() {
    for p in [5u64, 7] {
        for name in ["gauss-square", "gauss-twisted", "reparametrization", "reparametrization-wrong-sign"] {
            let r = verify_sum_identity(name, p).unwrap();
            assert!(r.as_expected(), "{r:?}");
        }
    }
    assert!(verify_sum_identity("gauss-square", 9).is_err());
    assert!(verify_sum_identity("no-such-identity", 3).is_err());
}
