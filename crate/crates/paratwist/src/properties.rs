//! Randomized property suites over the exact layer, groups and characters.

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::charsum::{char_value, gauss_sum, hecke_factorization, quadratic_product};
use crate::exact::{
    a_mat, diag_j, gsp_check, int, m2, rat, u_mat, Cyclotomic, GSpMat, Mat2, Rational, Realization,
};
use crate::fourier::{FourierExpansion, Index, Window};
use crate::groups::random_word;
use crate::twist::{apply_twist, oracle_forward, TwistError, TwistPlan};

/// Outcome of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub passed: bool,
}

fn report(name: &str, cases: u64, failures: u64) -> PropertyReport {
    PropertyReport {
        name: name.into(),
        cases,
        failures,
        passed: failures == 0 && cases > 0,
    }
}

/// `W(chi)^2 = chi(-1) p` for each prime.
pub fn gauss_law(primes: &[u64]) -> PropertyReport {
    let bad = primes
        .iter()
        .filter(|&&p| {
            let w = gauss_sum(p);
            w.try_mul(&w).ok() != Some(Cyclotomic::from_i64(char_value(p, -1) * p as i64))
        })
        .count();
    report("gauss-law", primes.len() as u64, bad as u64)
}

/// `[[1,0],[x,1]] = [[1,1/x],[0,1]] [[-1/x,0],[0,-x]] [[0,1],[-1,0]] [[1,1/x],[0,1]]`.
pub fn flipup_holds(x: &Rational) -> bool {
    if x.is_zero() {
        return false;
    }
    let o = || int(1);
    let z = || int(0);
    let xi = x.recip();
    let t = m2::new(o(), xi.clone(), z(), o());
    let d = m2::new(-xi.clone(), z(), z(), -x.clone());
    let w = m2::new(z(), o(), int(-1), z());
    let rhs = m2::mul(&m2::mul(&m2::mul(&t, &d), &w), &t);
    rhs == m2::new(o(), z(), x.clone(), o())
}

fn random_rational(rng: &mut impl Rng, span: i64) -> Rational {
    let num = rng.random_range(-span..=span);
    let den = rng.random_range(1..=span);
    rat(num, den)
}

fn random_nonzero(rng: &mut impl Rng, span: i64) -> Rational {
    loop {
        let x = random_rational(rng, span);
        if !x.is_zero() {
            return x;
        }
    }
}

/// The flipup identity on random nonzero rationals.
pub fn flipup_suite(cases: u64, rng: &mut impl Rng) -> PropertyReport {
    let bad = (0..cases)
        .filter(|_| !flipup_holds(&random_nonzero(rng, 1000)))
        .count();
    report("flipup", cases, bad as u64)
}

fn random_sym(rng: &mut impl Rng) -> Mat2 {
    let b = random_rational(rng, 20);
    m2::new(random_rational(rng, 20), b.clone(), b, random_rational(rng, 20))
}

fn random_invertible(rng: &mut impl Rng) -> Mat2 {
    loop {
        let p = m2::new(
            random_rational(rng, 9),
            random_rational(rng, 9),
            random_rational(rng, 9),
            random_rational(rng, 9),
        );
        if !m2::det(&p).is_zero() {
            return p;
        }
    }
}

/// A random similitude: a paramodular word times random `U(Q)`, `A(P)` and a diagonal.
pub fn random_similitude(rng: &mut impl Rng) -> GSpMat {
    let levels = [1u64, 2, 3, 4, 6, 81];
    let word = random_word(levels[rng.random_range(0..levels.len())], 4, rng);
    let lambda = random_nonzero(rng, 12);
    let d = diag_j(random_nonzero(rng, 7), random_nonzero(rng, 7), lambda);
    let u = u_mat(&random_sym(rng)).expect("symmetric");
    let a = a_mat(&random_invertible(rng)).expect("invertible");
    GSpMat::product([&word, &u, &a, &d]).expect("same realization")
}

/// `lambda(gh) = lambda(g) lambda(h)`, with `lambda(gh)` recomputed from the matrix.
pub fn multiplier_suite(cases: u64, rng: &mut impl Rng) -> PropertyReport {
    let mut bad = 0;
    for _ in 0..cases {
        let g = random_similitude(rng);
        let h = random_similitude(rng);
        let gh = g.mat().clone() * h.mat().clone();
        let ok = matches!(
            gsp_check(&gh, Realization::J),
            Ok(l) if l == g.multiplier() * h.multiplier()
        );
        if !ok {
            bad += 1;
        }
    }
    report("multiplier", cases, bad)
}

/// The product of the local components equals `chi(a)` for the quadratic
/// character attached to `M`.
pub fn hecke_factorization_suite(cases: u64, rng: &mut impl Rng) -> PropertyReport {
    let mut bad = 0;
    let mut done = 0;
    while done < cases {
        let m: u64 = rng.random_range(2..5000);
        let a: i64 = rng.random_range(-100_000..100_000);
        if num_integer::gcd(a.unsigned_abs(), m) != 1 {
            continue;
        }
        done += 1;
        let chi = |x: i64| quadratic_product(m, x);
        let prod: i64 = hecke_factorization(m, a, chi).iter().map(|(_, v)| v).product();
        if prod != chi(a) {
            bad += 1;
        }
    }
    report("hecke-factorization", cases, bad)
}

/// A random semidefinite index with `1 <= n, m <= 3`.
fn random_index(rng: &mut impl Rng) -> Index {
    let n = rng.random_range(1..=3i64);
    let m = rng.random_range(1..=3i64);
    let mut b = 0;
    while (b + 1) * (b + 1) <= 4 * n * m {
        b += 1;
    }
    Index::new(n, rng.random_range(-b..=b), m)
}

/// The optimized twist against the forward oracle on random single-coefficient
/// level-one inputs: equal on every oracle image and on a box of outputs, and
/// every image off the output lattice cancels.
pub fn oracle_equality(cases: u64, p: u64, rng: &mut impl Rng) -> Result<PropertyReport, TwistError> {
    const WEIGHT: i64 = 10;
    let plan = TwistPlan::new(p, WEIGHT)?;
    let out_level = p.pow(4);
    let mut bad = 0;
    for _ in 0..cases {
        let t = random_index(rng);
        let a: i128 = rng.random_range(1..=50) * if rng.random_bool(0.5) { -1 } else { 1 };
        let forward = oracle_forward(&[(t, a)], p, WEIGHT, 1);
        let mut f = FourierExpansion::new(WEIGHT, 1, Window::Box { n_max: 1 << 40, m_max: 1 << 40 });
        f.insert(t, Cyclotomic::from_i64(a as i64))
            .map_err(|e| TwistError::Internal(e.to_string()))?;
        let mut outputs: Vec<Index> = forward.lattice.keys().copied().collect();
        outputs.extend(Index::semidefinite_box(out_level as i64, 2, out_level));
        outputs.sort();
        outputs.dedup();
        let engine = apply_twist(&f, &plan, &outputs)?;
        let agrees = outputs.iter().all(|o| {
            let expected = forward
                .lattice
                .get(o)
                .cloned()
                .unwrap_or_else(|| Cyclotomic::from_i64(0));
            engine.window.contains(o) && engine.get(o) == expected
        });
        if !(agrees && forward.off_lattice_cancels()) {
            bad += 1;
        }
    }
    Ok(report("oracle-equality", cases, bad))
}
