//! Paramodular membership, random words and Atkin-Lehner elements.
//!
//! Run with `cargo run --example paramodular_groups`.

use paratwist::exact::Realization;
use paratwist::groups::{
    check_atkin_lehner, global_local_consistency, in_paramodular_global, in_paramodular_local,
    random_word, symmetry_fricke, symmetry_swap,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [1u64, 6, 81, 162] {
        let words: Vec<_> = (0..50).map(|_| random_word(n, 8, &mut rng)).collect();
        let members = words.iter().filter(|g| in_paramodular_global(g, n)).count();
        let consistent = words.iter().filter(|g| global_local_consistency(g, n)).count();
        println!("level {n}: {members}/50 random words in the group, {consistent}/50 locally consistent");
    }

    let n = 81;
    println!("swap in K({n}): {}", in_paramodular_global(&symmetry_swap(), n));
    println!("Fricke element in K({n}): {}", in_paramodular_global(&symmetry_fricke(n), n));
    println!(
        "Fricke element locally at 3 (r = 4): {}",
        in_paramodular_local(&symmetry_fricke(n), 3, 4, Realization::J)
    );

    for (m, ell) in [(6u64, 2u64), (6, 3), (18, 3), (162, 2), (162, 3)] {
        let r = check_atkin_lehner(m, ell);
        println!(
            "U_{ell} at level {m}: integral {}, congruences {}, normalizes {}, involution {}, lift independent {}",
            r.gamma_integral, r.congruences, r.normalizes, r.involution, r.lift_independent
        );
    }
}
