//! Coset representatives of `T(1,1,l,l)` and `T(1,l,l,l^2)` and their action
//! on chi10.
//!
//! Run with `cargo run --release --example hecke_operators`.

use paratwist::forms::{gritsenko_lift, phi10, LiftSource};
use paratwist::fourier::{evaluate, point, Index, Window};
use paratwist::hecke::{apply_hecke_numeric, apply_t1, verify_cosets, HeckeOp};

fn main() {
    for op in [HeckeOp::T1, HeckeOp::T2] {
        for ell in [2u64, 3] {
            for r in 0..3 {
                let c = verify_cosets(op, ell, r);
                println!(
                    "{op:?} l = {ell} level l^{r}: {} cosets (expected {}), passed {}",
                    c.count,
                    c.expected_count,
                    c.passed()
                );
            }
        }
    }

    let chi10 = LiftSource::new(phi10(20_000));
    for ell in [2u64, 3] {
        let outputs: Vec<Index> = Index::reduced_classes(40).into_iter().filter(|i| i.is_definite()).collect();
        let t = apply_t1(&chi10, ell, &outputs).expect("level one");
        let ratios: Vec<String> = outputs
            .iter()
            .filter(|i| t.window.contains(i))
            .take(3)
            .map(|i| format!("{} / {}", t.get(i), chi10.value(i).expect("in table")))
            .collect();
        println!("T(1,1,{ell},{ell}) chi10 on small indices: {ratios:?}");
    }

    let f = gritsenko_lift(&phi10(20_000), 1, Window::Box { n_max: 24, m_max: 24 }).expect("table");
    for z in [point([0.1, 0.05, -0.2], [1.6, 0.2, 1.7]), point([0.3, -0.1, 0.2], [1.7, -0.3, 1.5])] {
        let fz = evaluate(&f, &z, 1e-10).expect("converges");
        let tz = apply_hecke_numeric(&f, HeckeOp::T2, 2, &z, 1e-10).expect("converges");
        println!("(T(1,2,2,4) chi10)(Z) / chi10(Z) = {:.6}", tz.value / fz.value);
    }
}
