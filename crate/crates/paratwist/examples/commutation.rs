//! Commutation of the twist with Hecke operators on chi10 and chi10^2.
//!
//! On chi10 every relation is vacuous since its twist vanishes; on chi10^2
//! the exact relation `T(1,1,l,l) T_chi = chi(l) T_chi T(1,1,l,l)` is tested
//! on nonzero coefficients, together with the control factor `1`.
//!
//! Run with `cargo run --release --example commutation`.

use paratwist::forms::{gritsenko_lift, phi10, LiftSource, ProductSource};
use paratwist::fourier::{point, Index, Window};
use paratwist::hecke::{commutation_suite, verify_t1_relation, CommutationOptions};

fn main() {
    let (p, ell) = (3, 2);
    let lift = LiftSource::new(phi10(20_000));
    let f = gritsenko_lift(lift.jacobi(), 1, Window::Box { n_max: 24, m_max: 24 }).expect("table");
    let opts = CommutationOptions {
        p,
        ell,
        exact_window: Index::semidefinite_box(81, 1, 81),
        numeric_window: Index::semidefinite_box(162, 12, 81),
        points: vec![point([0.0; 3], [1.0 / 3.0, 0.0, 1.0 / 3.0])],
        eigen_points: vec![point([0.1, 0.05, -0.2], [1.6, 0.2, 1.7]), point([0.3, -0.1, 0.2], [1.7, -0.3, 1.5])],
        tolerance: 1e-6,
        tail: 1e-10,
    };
    let report = commutation_suite(&lift, &f, &opts).expect("suite runs");
    println!("chi10, T(2) eigenvalue {:?} (spread {:?})", report.eigenvalue_t2, report.eigenvalue_spread);
    for r in &report.relations {
        println!("  {}: passed {}, vacuous {}, {} compared", r.name, r.passed, r.vacuous, r.compared);
    }

    let square = ProductSource::new(&lift, &lift).expect("same level");
    let (rel, control) = verify_t1_relation(&square, p, ell, &opts.exact_window).expect("relation");
    println!(
        "chi10^2, {} ({}): passed {}, vacuous {}, {} compared, factor 1 rejected: {control:?}",
        rel.name, rel.note, rel.passed, rel.vacuous, rel.compared
    );
}
