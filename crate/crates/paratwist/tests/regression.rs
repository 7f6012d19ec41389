//! The bundled files under `data/` against fresh computation.

use std::path::PathBuf;

use paratwist::exact::Cyclotomic;
use paratwist::forms::{delta_qexp, gritsenko_lift, phi10, LiftSource, ProductSource};
use paratwist::fourier::{load_expansion, Expansion, Index, Window};
use paratwist::twist::gl2::gl2_twist_closed;
use paratwist::twist::{apply_twist, TwistPlan};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn siegel(name: &str) -> paratwist::fourier::FourierExpansion {
    match load_expansion(&data(name)).unwrap() {
        Expansion::Siegel(f) => f,
        Expansion::Elliptic(_) => panic!("{name} is elliptic"),
    }
}

fn elliptic(name: &str) -> paratwist::fourier::EllipticExpansion {
    match load_expansion(&data(name)).unwrap() {
        Expansion::Elliptic(f) => f,
        Expansion::Siegel(_) => panic!("{name} is a Siegel expansion"),
    }
}

#[test]
fn delta_and_its_twist() {
    let delta = elliptic("delta.json");
    assert_eq!(delta, delta_qexp(60));
    assert_eq!(delta.get(11), Cyclotomic::from_i64(534_612));
    assert_eq!(elliptic("delta_twist_p3.json"), gl2_twist_closed(&delta, 3).unwrap());
}

#[test]
fn phi10_table() {
    let text = std::fs::read_to_string(data("phi10.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["weight"], 10);
    let stored: Vec<i128> = v["by_discriminant"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(stored, phi10(400).by_disc);
}

#[test]
fn chi10_box() {
    let f = siegel("chi10_box8.json");
    assert_eq!(f, gritsenko_lift(&phi10(400), 1, Window::Box { n_max: 8, m_max: 8 }).unwrap());
}

#[test]
fn chi10_squared_twist() {
    let stored = siegel("chi10_squared_twist_p3.json");
    assert_eq!((stored.weight, stored.level), (20, 81));
    let lift = LiftSource::new(phi10(20_000));
    let square = ProductSource::new(&lift, &lift).unwrap();
    let outputs = Index::semidefinite_box(81, 1, 81);
    let fresh = apply_twist(&square, &TwistPlan::new(3, 20).unwrap(), &outputs).unwrap();
    assert_eq!(stored.coefficients, fresh.coefficients);
    assert_eq!(stored.window.indices(81), fresh.window.indices(81));
}
