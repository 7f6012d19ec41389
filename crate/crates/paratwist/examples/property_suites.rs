//! Randomized invariants: Gauss sums, the flipup identity, multipliers of
//! random similitudes, local factorization of characters and the optimized
//! twist against the forward oracle.
//!
//! Run with `cargo run --release --example property_suites [seed]`.

use paratwist::properties::{flipup_suite, gauss_law, hecke_factorization_suite, multiplier_suite, oracle_equality};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let seed: u64 = std::env::args().nth(1).map_or(7, |s| s.parse().expect("a seed"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reports = [
        gauss_law(&[3, 5, 7, 11, 13]),
        flipup_suite(200, &mut rng),
        multiplier_suite(500, &mut rng),
        hecke_factorization_suite(500, &mut rng),
        oracle_equality(10, 3, &mut rng).expect("twist"),
    ];
    for r in &reports {
        println!("{}: {} cases, {} failures, passed {}", r.name, r.cases, r.failures, r.passed);
    }
}
