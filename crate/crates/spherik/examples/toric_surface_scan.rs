//! Exact toric-surface criterion: a Futaki check on affine functions, then
//! an exhaustive crease scan. Polarizations of P^1 x P^1 pass, every
//! polarization of F_1 is destabilized by an explicit crease.
//!
//! Run with: cargo run --example toric_surface_scan

use spherik::criteria::{check_toric_surface, toric_surface::DEFAULT_TOL};
use spherik::model::{load_spherical_data, normalize};
use spherik::rational::rat_str;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["p1xp1_11.json", "p1xp1_12.json", "f1_toric_11.json", "f1_toric_21.json"] {
        let model = normalize(&load_spherical_data(&dir.join(name)).unwrap()).unwrap();
        let verdict = check_toric_surface(&model, DEFAULT_TOL).unwrap();
        print!("{name}: {}", verdict.outcome.as_str());
        if let Some(w) = &verdict.witness {
            print!(", witness L = {}", rat_str(&w.value));
        }
        println!();
        for (k, v) in &verdict.diagnostics {
            println!("    {k}: {v}");
        }
    }
}
