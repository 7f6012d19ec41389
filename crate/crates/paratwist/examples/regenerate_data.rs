//! Regenerates the regression files under `data/`.
//!
//! Run with `cargo run --release --example regenerate_data [dir]`; the
//! default directory is the crate's `data/`.

use std::path::{Path, PathBuf};

use paratwist::forms::{delta_qexp, gritsenko_lift, phi10, JacobiForm, LiftSource, ProductSource};
use paratwist::fourier::{save_expansion, Expansion, Index, Window};
use paratwist::twist::gl2::gl2_twist_closed;
use paratwist::twist::{apply_twist, TwistPlan};

fn write_jacobi(path: &Path, j: &JacobiForm) {
    let v = serde_json::json!({
        "kind": "jacobi",
        "index": 1,
        "weight": j.weight,
        "max_disc": j.max_disc(),
        "by_discriminant": j.by_disc.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    std::fs::write(path, serde_json::to_string_pretty(&v).expect("json") + "\n").expect("writable");
}

fn save(dir: &Path, name: &str, x: Expansion) {
    let path = dir.join(name);
    save_expansion(&path, &x).expect("writable");
    println!("wrote {}", path.display());
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data"));
    std::fs::create_dir_all(&dir).expect("creatable");

    let delta = delta_qexp(60);
    save(&dir, "delta.json", Expansion::Elliptic(delta.clone()));
    save(&dir, "delta_twist_p3.json", Expansion::Elliptic(gl2_twist_closed(&delta, 3).expect("twist")));

    let jacobi = phi10(400);
    write_jacobi(&dir.join("phi10.json"), &jacobi);
    println!("wrote {}", dir.join("phi10.json").display());

    let chi10 = gritsenko_lift(&jacobi, 1, Window::Box { n_max: 8, m_max: 8 }).expect("table");
    save(&dir, "chi10_box8.json", Expansion::Siegel(chi10));

    let lift = LiftSource::new(phi10(20_000));
    let square = ProductSource::new(&lift, &lift).expect("same level");
    let plan = TwistPlan::new(3, 20).expect("plan");
    let outputs = Index::semidefinite_box(81, 1, 81);
    let twisted = apply_twist(&square, &plan, &outputs).expect("twist");
    save(&dir, "chi10_squared_twist_p3.json", Expansion::Siegel(twisted));
}
