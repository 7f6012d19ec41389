//! Coset-sum identities of the local twisting map at p = 3.
//!
//! Each side is a formal sum of cosets `g K`, discretized modulo a large enough
//! power of p and compared coset by coset.
//!
//! Run with `cargo run --release --example local_identities [name ...]`.

use paratwist::cosets::PAdicCtx;
use paratwist::twist::{
    identity, lemma_p3, reparametrization_complement, verify_identity, verify_theorem_corollary,
    LocalOptions,
};

fn main() {
    let p = 3;
    let ctx = PAdicCtx::new(p);
    let opts = LocalOptions::default();
    let mut names: Vec<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names = ["lemma-p1", "merge-eta", "reparam-w1-w2", "chi-elim-2"].map(String::from).to_vec();
    }
    for name in &names {
        let Some(id) = identity(&ctx, name) else {
            eprintln!("unknown identity {name}");
            std::process::exit(2);
        };
        let r = verify_identity(&ctx, &id, &opts).expect("verification runs");
        let depths: Vec<_> = r.lhs.iter().chain(&r.rhs).map(|t| (t.label.as_str(), t.depths.clone())).collect();
        println!("{name}: {} ({} mismatched cosets), depths {depths:?}", r.passed, r.mismatches);
    }

    let complement = reparametrization_complement(p);
    let corrected = verify_identity(&ctx, &lemma_p3(&ctx, complement.clone(), true), &opts).expect("runs");
    let literal = verify_identity(&ctx, &lemma_p3(&ctx, complement, false), &opts).expect("runs");
    println!(
        "lemma-p3 with A(z) = (1 - 1/z) + p: {}; with the unshifted range: {} ({} mismatches)",
        corrected.passed, literal.passed, literal.mismatches
    );

    for i in 1..=14 {
        let r = verify_theorem_corollary(p, i, None).expect("family exists");
        println!("theorem family {i:2} against its corollary form: {} ({} mismatches)", r.passed, r.mismatches);
    }
}
