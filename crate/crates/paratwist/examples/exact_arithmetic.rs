//! Exact cyclotomic arithmetic and similitude matrices.
//!
//! Run with `cargo run --example exact_arithmetic`.

use paratwist::charsum::{char_value, gauss_sum, twisted_gauss_sum};
use paratwist::exact::{eta, gsp_check, int, tau, Cyclotomic, GSpMat};

fn main() {
    for p in [3u64, 5, 7, 11] {
        let w = gauss_sum(p);
        let square = w.try_mul(&w).expect("same field");
        let expected = Cyclotomic::from_i64(char_value(p, -1) * p as i64);
        println!("p = {p}: W(chi)^2 = {square} (expected {expected})");
        assert_eq!(square, expected);
        let w2 = twisted_gauss_sum(p, 2);
        println!("  sum chi(u) e(2u/p) = {w2}, chi(2) W = {}", w.scale(&int(char_value(p, 2))));
    }

    let z = Cyclotomic::zeta_power(3, 2, 1);
    let z9 = (0..9).fold(Cyclotomic::from_i64(1), |acc, _| acc.try_mul(&z).expect("same field"));
    println!("zeta_9^9 = {z9}");

    let p = 3;
    let word = GSpMat::product([&eta(p), &tau(p), &eta(p).inverse()]).expect("same realization");
    println!("eta tau eta^-1 at p = {p} ({}) has multiplier {}", word.realization(), word.multiplier());
    let lambda = gsp_check(word.mat(), word.realization()).expect("a similitude");
    assert_eq!(&lambda, word.multiplier());
    println!("{word}");
}
