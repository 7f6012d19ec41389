//! Fourier expansions: exact slash by block upper triangular matrices,
//! numeric evaluation and JSON round trips.
//!
//! Run with `cargo run --release --example fourier_expansions`.

use paratwist::exact::{int, m2, rat, Cyclotomic};
use paratwist::forms::{gritsenko_lift, phi10};
use paratwist::fourier::{
    evaluate, from_json, point, relative_deviation, slash_monomial, slash_numeric, slash_sum, to_json, Expansion,
    Index, UpperBlock, Window,
};
use paratwist::groups::symmetry_swap;

fn main() {
    let f = gritsenko_lift(&phi10(20_000), 1, Window::Box { n_max: 24, m_max: 24 }).expect("table is large enough");
    println!("chi10 on a 24 x 24 box: {} nonzero coefficients", f.coefficients.len());
    for idx in [Index::new(1, 1, 1), Index::new(1, 0, 1), Index::new(2, 1, 1), Index::new(2, 2, 2)] {
        println!("  a{:?} = {}", (idx.n, idx.r, idx.m), f.get(&idx));
    }

    let unimodular = m2::new(int(1), int(1), int(0), int(1));
    let zero = m2::new(int(0), int(0), int(0), int(0));
    let same = slash_monomial(&f, &zero, &unimodular, 1).expect("slash");
    let moved = same.expansion.differences(&f).len();
    println!("F | A([[1,1],[0,1]]) differs from F at {moved} indices of the common window");

    let identity = m2::new(int(1), int(0), int(0), int(1));
    let terms: Vec<_> = (0..3)
        .map(|j| {
            let q = m2::new(rat(j, 3), int(0), int(0), int(0));
            (Cyclotomic::from_i64(1), UpperBlock::monomial(&q, &identity, f.weight).expect("upper block"))
        })
        .collect();
    let outputs = Index::semidefinite_box(24, 24, 3);
    let projected = slash_sum(&f, &terms, &outputs, 3).expect("slash");
    let tripled = outputs
        .iter()
        .all(|i| projected.get(i) == f.get(i).scale(&int(3)));
    println!(
        "sum over j of F | U(diag(j/3, 0)): level {}, {} indices, equals 3 a(T) on n = 0 mod 3: {tripled}",
        projected.level,
        outputs.len()
    );

    let z = point([0.1, 0.05, -0.2], [1.6, 0.2, 1.7]);
    let v = evaluate(&f, &z, 1e-10).expect("converges");
    let w = slash_numeric(&f, &symmetry_swap(), &z, 1e-10).expect("converges");
    println!(
        "F(Z) = {:.6e}, (F | swap)(Z) = {:.6e}, deviation {:.1e}, tail {:.1e}",
        v.value,
        w.value,
        relative_deviation(v.value, w.value),
        v.tail
    );

    let text = to_json(&Expansion::Siegel(f.clone())).expect("serializable");
    let back = match from_json(&text).expect("parses") {
        Expansion::Siegel(g) => g,
        Expansion::Elliptic(_) => unreachable!(),
    };
    println!("JSON round trip: {} bytes, identical {}", text.len(), back == f);
}
