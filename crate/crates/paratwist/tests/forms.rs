use std::collections::HashMap;

use num_traits::ToPrimitive;
use paratwist::exact::{rat, Cyclotomic, Rational};
use paratwist::forms::{
    delta_qexp, eisenstein_coeffs, gritsenko_lift, hurwitz_class_number, jacobi_eisenstein, phi10, phi10_oracle,
    LiftSource, ProductSource,
};
use paratwist::fourier::{materialize, CoefficientSource, Index, Window};
use proptest::prelude::*;

fn series_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect()
}

#[test]
fn delta_matches_eisenstein_oracle() {
    let d = 30;
    let e4 = eisenstein_coeffs(4, d);
    let e6 = eisenstein_coeffs(6, d);
    let e4_cubed = series_mul(&series_mul(&e4, &e4), &e4);
    let e6_squared = series_mul(&e6, &e6);
    let delta = delta_qexp(d);
    for n in 0..=d {
        let expected = (e4_cubed[n] - e6_squared[n]) / 1728;
        assert_eq!(delta.get(n), Cyclotomic::from_i64(expected as i64), "q^{n}");
    }
}

#[test]
fn ramanujan_tau_values() {
    let tau = [1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920];
    let delta = delta_qexp(12);
    for (n, t) in tau.iter().enumerate() {
        assert_eq!(delta.get(n + 1), Cyclotomic::from_i64(*t));
    }
}

#[test]
fn phi10_table() {
    let j = phi10(400);
    let pins = [(3, 1), (4, -2), (7, -16), (8, 36), (11, 99), (12, -272), (15, -240), (16, 1056)];
    for (d, c) in pins {
        assert_eq!(j.by_discriminant(d), Some(c), "D = {d}");
    }
    let oracle = phi10_oracle(12).unwrap();
    for (n, row) in oracle.iter().enumerate() {
        for &(r, c) in row {
            assert_eq!(j.coefficient(n as i64, r), Some(c), "c({n}, {r})");
        }
    }
}

/// Hurwitz class numbers by counting reduced forms of discriminant `-n`.
fn hurwitz_oracle(n: u64) -> Rational {
    let n = n as i64;
    let mut h = rat(0, 1);
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a..=a {
            if (b * b + n) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + n) / (4 * a);
            if c < a || (b < 0 && (b == -a || a == c)) {
                continue;
            }
            h += if a == c && b == 0 {
                rat(1, 2)
            } else if a == b && b == c {
                rat(1, 3)
            } else {
                rat(1, 1)
            };
        }
        a += 1;
    }
    h
}

#[test]
fn hurwitz_numbers_match_reduced_forms() {
    assert_eq!(hurwitz_class_number(0), rat(-1, 12));
    for n in 1..400u64 {
        let expected = if n % 4 == 1 || n % 4 == 2 { rat(0, 1) } else { hurwitz_oracle(n) };
        assert_eq!(hurwitz_class_number(n), expected, "H({n})");
    }
}

/// `c(n, r)` of the theta series of `E8` against a root: vectors `x` with
/// `x.x = 2n` and `x.v = r`.
fn e8_theta(n_max: i64) -> HashMap<(i64, i64), i128> {
    let mut out = HashMap::new();
    let bound = 2 * n_max;
    let mut count = |x: &[i64; 8], scale: i64| {
        let norm: i64 = x.iter().map(|c| c * c).sum();
        if norm % (scale * scale) != 0 || norm / (scale * scale) > bound {
            return;
        }
        let n = norm / (scale * scale) / 2;
        let r = (x[0] + x[1]) / scale;
        *out.entry((n, r)).or_insert(0) += 1;
    };
    let ints: Vec<i64> = (-2..=2).collect();
    let halves = [-3i64, -1, 1, 3];
    for (values, scale) in [(&ints[..], 1i64), (&halves[..], 2)] {
        let k = values.len();
        for code in 0..k.pow(8) {
            let mut x = [0i64; 8];
            let mut c = code;
            for slot in x.iter_mut() {
                *slot = values[c % k];
                c /= k;
            }
            let sum: i64 = x.iter().sum();
            if sum % (2 * scale) == 0 {
                count(&x, scale);
            }
        }
    }
    out
}

#[test]
fn jacobi_eisenstein_4_matches_e8_theta() {
    let e41 = jacobi_eisenstein(4, 16).unwrap();
    let theta = e8_theta(2);
    for n in 0..=2 {
        for r in -3..=3 {
            if 4 * n - r * r < 0 {
                continue;
            }
            let expected = theta.get(&(n, r)).copied().unwrap_or(0);
            assert_eq!(e41.coefficient(n, r), Some(expected), "e41({n}, {r})");
        }
    }
}

#[test]
fn jacobi_eisenstein_6_leading_terms() {
    let e61 = jacobi_eisenstein(6, 12).unwrap();
    assert_eq!(e61.by_discriminant(0), Some(1));
    assert_eq!(e61.by_discriminant(3), Some(-88));
    assert_eq!(e61.by_discriminant(4), Some(-330));
    assert!(jacobi_eisenstein(5, 12).is_err());
}

#[test]
fn lift_materializes_its_source() {
    let lift = LiftSource::new(phi10(400));
    let f = gritsenko_lift(lift.jacobi(), 1, Window::Box { n_max: 6, m_max: 6 }).unwrap();
    for idx in f.window.indices(1) {
        let v = lift.value(&idx).unwrap();
        assert_eq!(f.get(&idx), Cyclotomic::from_i64(v as i64));
        assert_eq!(lift.value(&idx.reduced()), Some(v));
    }
    assert_eq!(f.get(&Index::new(1, 1, 1)), Cyclotomic::from_i64(1));
    assert_eq!(f.get(&Index::new(2, 1, 1)), Cyclotomic::from_i64(-16));
    assert_eq!(f.get(&Index::new(2, 2, 2)), Cyclotomic::from_i64(240));
}

#[test]
fn product_matches_naive_convolution() {
    let w = 5;
    let f = gritsenko_lift(&phi10(400), 1, Window::Box { n_max: w, m_max: w }).unwrap();
    let lift = LiftSource::new(phi10(400));
    let square = ProductSource::new(&lift, &lift).unwrap();
    let g = materialize(&square, &Window::Box { n_max: w, m_max: w });
    let coeffs: Vec<(Index, i64)> = f
        .coefficients
        .iter()
        .map(|(i, v)| (*i, v.to_rational().unwrap().to_integer().to_i64().unwrap()))
        .collect();
    let mut naive: HashMap<Index, i64> = HashMap::new();
    for (a, x) in &coeffs {
        for (b, y) in &coeffs {
            let t = Index::new(a.n + b.n, a.r + b.r, a.m + b.m);
            if t.n <= w && t.m <= w {
                *naive.entry(t).or_insert(0) += x * y;
            }
        }
    }
    for idx in g.window.indices(1) {
        let expected = naive.get(&idx).copied().unwrap_or(0);
        assert_eq!(g.get(&idx), Cyclotomic::from_i64(expected), "{idx:?}");
    }
    assert_eq!(square.weight(), 20);
}

proptest! {
    #[test]
    fn lift_coefficients_are_gl2_invariant(n in 1i64..30, m in 1i64..30, r in -40i64..40) {
        let lift = LiftSource::new(phi10(20_000));
        let t = Index::new(n, r, m);
        prop_assume!(t.is_definite());
        let v = lift.value(&t);
        prop_assert_eq!(lift.value(&Index::new(m, r, n)), v);
        prop_assert_eq!(lift.value(&Index::new(n, -r, m)), v);
        prop_assert_eq!(lift.value(&Index::new(n, r + 2 * n, m + r + n)), v);
    }
}
