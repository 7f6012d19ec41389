//! The elliptic analogue: twisting Delta by the quadratic character mod p.
//!
//! The slash-operator sum is compared with the closed form
//! `sum chi(n) a(n) q^n` and with `T(l)`.
//!
//! Run with `cargo run --example gl2_twist`.

use paratwist::forms::{delta_qexp, eisenstein_qexp};
use paratwist::twist::gl2::{gl2_twist_closed, gl2_twist_slash, verify_gl2_commutation, verify_gl2_twist};

fn main() {
    let delta = delta_qexp(40);
    println!("tau(1..8) = {:?}", (1..=8).map(|n| delta.get(n).to_string()).collect::<Vec<_>>());
    for p in [3u64, 5, 7] {
        let slash = gl2_twist_slash(&delta, p).expect("twist");
        let closed = gl2_twist_closed(&delta, p).expect("twist");
        println!("p = {p}: level {} -> {}, agree {}", delta.level, slash.level, slash == closed);
        println!("  first terms {:?}", (1..=6).map(|n| slash.get(n).to_string()).collect::<Vec<_>>());
        let r = verify_gl2_twist(&delta, p).expect("twist");
        let c = verify_gl2_commutation(&delta, p, 2).expect("twist");
        println!("  closed form {}, T(2) commutation {}", r.passed, c.passed);
    }
    let e4 = eisenstein_qexp(4, 30);
    println!("E4 twisted at p = 5: {}", verify_gl2_twist(&e4, 5).expect("twist").passed);
}
