use num_traits::ToPrimitive;
use paratwist::forms::{delta_qexp, eisenstein_qexp, gritsenko_lift, phi10, LiftSource};
use paratwist::fourier::{evaluate, point, Index, Window};
use paratwist::hecke::{
    apply_atkin_lehner_numeric, apply_hecke_numeric, apply_t1, coset_reps, verify_cosets, verify_left_disjoint,
    HeckeOp,
};

#[test]
fn coset_counts_and_disjointness() {
    for op in [HeckeOp::T1, HeckeOp::T2] {
        for r in 0..3 {
            assert_eq!(coset_reps(op, 5, r).reps.len(), op.expected_count(5, r));
        }
        for ell in [2u64, 3] {
            for r in 0..3 {
                let rep = verify_cosets(op, ell, r);
                assert_eq!(rep.count, op.expected_count(ell, r), "{op:?} l = {ell} r = {r}");
                assert!(rep.passed(), "{op:?} l = {ell} r = {r}: {rep:?}");
            }
        }
    }
    assert_eq!(HeckeOp::T1.expected_count(2, 0), 15);
    assert_eq!(HeckeOp::T2.expected_count(3, 1), 108);
}

#[test]
fn duplicated_representatives_are_detected() {
    let mut family = coset_reps(HeckeOp::T1, 2, 1);
    let first = family.reps[0].clone();
    family.reps.push(first);
    assert!(!verify_left_disjoint(&family).disjoint());
}

/// `a(p)` of the weight-18 cusp form `Delta E6`.
fn delta_e6(p: usize) -> i128 {
    let d = delta_qexp(p + 1);
    let e = eisenstein_qexp(6, p + 1);
    (0..=p)
        .map(|i| {
            let x = d.get(i).to_rational().unwrap().to_integer().to_i128().unwrap();
            let y = e.get(p - i).to_rational().unwrap().to_integer().to_i128().unwrap();
            x * y
        })
        .sum()
}

#[test]
fn t1_eigenvalues_on_chi10_match_the_lift() {
    let lift = LiftSource::new(phi10(20_000));
    let outputs: Vec<Index> = Index::reduced_classes(60).into_iter().filter(Index::is_definite).collect();
    for (ell, pinned) in [(2u64, 240i128), (3, 21960)] {
        let p = ell as i128;
        let expected = p.pow(8) + p.pow(9) + delta_e6(ell as usize);
        assert_eq!(expected, pinned);
        let t = apply_t1(&lift, ell, &outputs).unwrap();
        let mut checked = 0;
        for idx in &outputs {
            if !t.window.contains(idx) {
                continue;
            }
            let a = lift.value(idx).unwrap();
            let b = t.get(idx).to_rational().unwrap();
            assert_eq!(b, paratwist::exact::int((expected * a) as i64), "{idx:?}");
            checked += 1;
        }
        assert!(checked > 10);
    }
}

#[test]
fn t2_and_atkin_lehner_on_chi10() {
    let f = gritsenko_lift(&phi10(20_000), 1, Window::Box { n_max: 24, m_max: 24 }).unwrap();
    for z in [point([0.1, 0.05, -0.2], [1.6, 0.2, 1.7]), point([0.0, 0.15, 0.0], [1.5, 0.1, 1.5])] {
        let fz = evaluate(&f, &z, 1e-10).unwrap().value;
        let t2 = apply_hecke_numeric(&f, HeckeOp::T2, 2, &z, 1e-10).unwrap();
        let ratio = t2.value / fz;
        assert!((ratio.re + 153_600.0).abs() < 1e-6 * 153_600.0, "{ratio}");
        assert!(ratio.im.abs() < 1e-6 * 153_600.0);
        let t1 = apply_hecke_numeric(&f, HeckeOp::T1, 2, &z, 1e-10).unwrap();
        assert!(((t1.value / fz).re - 240.0).abs() < 1e-6 * 240.0);
        let al = apply_atkin_lehner_numeric(&f, 2, 0, &z, 1e-10).unwrap();
        assert!((al.value / fz - 1.0).norm() < 1e-9);
    }
}

#[test]
fn small_windows_are_rejected() {
    let f = gritsenko_lift(&phi10(4000), 1, Window::Box { n_max: 12, m_max: 12 }).unwrap();
    let z = point([0.1, 0.05, -0.2], [1.6, 0.2, 1.7]);
    assert!(apply_hecke_numeric(&f, HeckeOp::T2, 2, &z, 1e-10).is_err());
}
