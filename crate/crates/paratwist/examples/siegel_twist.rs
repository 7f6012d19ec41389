//! The twisting operator `T_chi` at p = 3 on level-one forms.
//!
//! The Saito-Kurokawa lift chi10 twists to zero on the window; its square
//! chi10^2 of weight 20 does not. A single-coefficient input is pushed through
//! the unoptimized forward sum and compared with the optimized plan.
//!
//! Run with `cargo run --release --example siegel_twist`.

use paratwist::exact::Cyclotomic;
use paratwist::forms::{phi10, LiftSource, ProductSource};
use paratwist::fourier::{FourierExpansion, Index, Window};
use paratwist::twist::{apply_twist, oracle_forward, TwistPlan};

fn main() {
    let p = 3;
    let out_level = 81;
    let outputs = Index::semidefinite_box(out_level as i64, 1, out_level);

    let chi10 = LiftSource::new(phi10(20_000));
    let plan10 = TwistPlan::new(p, 10).expect("plan");
    let (blocks, monomials) = plan10.size();
    println!("plan for weight 10: {blocks} distinct A(P) blocks, {monomials} monomials after closed-form sums");
    let t10 = apply_twist(&chi10, &plan10, &outputs).expect("twist");
    println!(
        "T_chi(chi10): {} of {} indices computed, {} nonzero",
        t10.window.indices(out_level).len(),
        outputs.len(),
        t10.coefficients.len()
    );

    let square = ProductSource::new(&chi10, &chi10).expect("same level");
    let plan20 = TwistPlan::new(p, 20).expect("plan");
    let t20 = apply_twist(&square, &plan20, &outputs).expect("twist");
    println!(
        "T_chi(chi10^2): {} of {} indices computed, {} nonzero",
        t20.window.indices(out_level).len(),
        outputs.len(),
        t20.coefficients.len()
    );
    for (idx, v) in t20.coefficients.iter().take(4) {
        println!("  b{:?} = {v}", (idx.n, idx.r, idx.m));
    }

    let t = Index::new(2, 1, 3);
    let forward = oracle_forward(&[(t, 1)], p, 10, 1);
    let mut single = FourierExpansion::new(10, 1, Window::Box { n_max: 1 << 40, m_max: 1 << 40 });
    single.insert(t, Cyclotomic::from_i64(1)).expect("in window");
    let keys: Vec<Index> = forward.lattice.keys().copied().collect();
    let optimized = apply_twist(&single, &plan10, &keys).expect("twist");
    let agree = keys.iter().all(|k| optimized.get(k) == forward.lattice[k]);
    println!(
        "single input a{:?} = 1: {} forward contributions, {} lattice images, {} off the lattice (cancel: {}), plan agrees: {agree}",
        (t.n, t.r, t.m),
        forward.contributions,
        forward.lattice.len(),
        forward.off_lattice.len(),
        forward.off_lattice_cancels()
    );
}
