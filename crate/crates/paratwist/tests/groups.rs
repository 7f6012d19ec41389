use paratwist::exact::{diag_j, gsp_check, int, rat, u_mat, Realization};
use paratwist::groups::{
    check_atkin_lehner, elementary_divisors, global_local_consistency, in_paramodular_global, in_paramodular_local,
    probe_generators, random_word, symmetry_fricke, symmetry_swap,
};
use paratwist::properties::random_similitude;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_words_stay_in_the_group(seed in any::<u64>(), level in prop::sample::select(vec![1u64, 2, 6, 9, 81, 162])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_word(level, 6, &mut rng);
        prop_assert!(in_paramodular_global(&g, level));
        prop_assert!(global_local_consistency(&g, level));
        prop_assert!(in_paramodular_global(&g.inverse(), level));
    }

    #[test]
    fn multipliers_multiply(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_similitude(&mut rng);
        let h = random_similitude(&mut rng);
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(gh.multiplier(), &(g.multiplier() * h.multiplier()));
        prop_assert_eq!(gsp_check(gh.mat(), Realization::J).unwrap(), gh.multiplier().clone());
    }

    #[test]
    fn realizations_convert_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_similitude(&mut rng);
        let there = g.convert(Realization::JPrime);
        prop_assert_eq!(there.multiplier(), g.multiplier());
        prop_assert_eq!(there.convert(Realization::J), g);
    }
}

#[test]
fn generators_and_symmetries_are_members() {
    for n in [1u64, 3, 81, 162] {
        for g in probe_generators(n) {
            assert!(in_paramodular_global(&g, n), "level {n}: {g}");
        }
        assert!(in_paramodular_global(&symmetry_swap(), n));
        assert!(in_paramodular_global(&symmetry_fricke(n), n));
    }
}

#[test]
fn non_members_are_rejected() {
    let translation = u_mat(&[[rat(1, 2), int(0)], [int(0), int(0)]]).unwrap();
    assert!(!in_paramodular_global(&translation, 1));
    assert!(in_paramodular_global(&translation, 2));
    let scaled = diag_j(int(3), int(3), int(3));
    assert!(!in_paramodular_global(&scaled, 3));
    assert!(!in_paramodular_local(&symmetry_fricke(9), 3, 1, Realization::J));
    assert!(in_paramodular_local(&symmetry_fricke(9), 3, 2, Realization::J));
}

#[test]
fn atkin_lehner_elements() {
    for (m, ell) in [(2u64, 2u64), (6, 2), (6, 3), (18, 2), (18, 3), (81, 3), (162, 2), (162, 3), (50, 5)] {
        let r = check_atkin_lehner(m, ell);
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn elementary_divisors_of_diagonals() {
    let g = diag_j(int(1), int(2), int(4));
    assert_eq!(elementary_divisors(g.mat(), 2), Some([0, 1, 1, 2]));
    let g = diag_j(int(3), int(3), int(3));
    assert_eq!(elementary_divisors(g.mat(), 3), Some([0, 0, 1, 1]));
}
