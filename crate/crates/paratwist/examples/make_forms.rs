//! Elliptic, Jacobi and Siegel input forms, saved and reloaded as JSON.
//!
//! Run with `cargo run --release --example make_forms`.

use paratwist::forms::{
    delta_qexp, eisenstein_qexp, gritsenko_lift, hurwitz_class_number, jacobi_eisenstein, phi10, LiftSource,
    ProductSource,
};
use paratwist::fourier::{load_expansion, materialize, save_expansion, CoefficientSource, Expansion, Index, Window};

fn main() {
    let delta = delta_qexp(12);
    let e4 = eisenstein_qexp(4, 6);
    println!("Delta: {:?}", (1..=6).map(|n| delta.get(n).to_string()).collect::<Vec<_>>());
    println!("E4: {:?}", (0..=5).map(|n| e4.get(n).to_string()).collect::<Vec<_>>());

    let h: Vec<String> = (0..=12).map(|n| hurwitz_class_number(n).to_string()).collect();
    println!("H(0..12) = {h:?}");
    let e41 = jacobi_eisenstein(4, 20).expect("weight 4");
    let j = phi10(20);
    println!("E_(4,1) by discriminant: {:?}", &e41.by_disc[..8]);
    println!("phi10 by discriminant: {:?}", &j.by_disc[..13]);

    let chi10 = gritsenko_lift(&phi10(400), 1, Window::Box { n_max: 6, m_max: 6 }).expect("table");
    println!("chi10 on a 6 x 6 box: {} nonzero coefficients", chi10.coefficients.len());

    let lift = LiftSource::new(phi10(400));
    let square = ProductSource::new(&lift, &lift).expect("same level");
    let sq = materialize(&square, &Window::Box { n_max: 4, m_max: 4 });
    println!(
        "chi10^2 (weight {}): a(2,1,2) = {}, a(2,2,2) = {}",
        square.weight(),
        sq.get(&Index::new(2, 1, 2)),
        sq.get(&Index::new(2, 2, 2))
    );

    let dir = std::env::temp_dir().join("paratwist-make-forms");
    std::fs::create_dir_all(&dir).expect("temp dir");
    for (name, x) in [("chi10.json", Expansion::Siegel(chi10)), ("delta.json", Expansion::Elliptic(delta))] {
        let path = dir.join(name);
        save_expansion(&path, &x).expect("writable");
        let back = load_expansion(&path).expect("readable");
        println!("{}: round trip identical {}", path.display(), back == x);
    }
}
