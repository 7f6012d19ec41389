//! Quadratic characters, their local factorization and the finite sum
//! identities used to collapse parameters of the twist.
//!
//! Run with `cargo run --release --example character_sums [p]`.

use paratwist::charsum::{hecke_factorization, quadratic_product, verify_sum_identity, SUM_IDENTITIES};

fn main() {
    let p: u64 = std::env::args().nth(1).map_or(3, |s| s.parse().expect("an odd prime"));
    for name in SUM_IDENTITIES {
        let r = verify_sum_identity(name, p).expect("odd prime");
        let tag = if r.control { " (negative control)" } else { "" };
        println!("{name}{tag} at p = {p}: holds {} on {} cases", r.passed, r.cases);
    }

    let m = 3 * 5 * 49;
    for a in [2i64, 11, -1, 104] {
        let parts = hecke_factorization(m, a, |x| quadratic_product(m, x));
        let product: i64 = parts.iter().map(|(_, v)| v).product();
        println!("chi_{m}({a}) = {}, local components {parts:?}, product {product}", quadratic_product(m, a));
    }
}
