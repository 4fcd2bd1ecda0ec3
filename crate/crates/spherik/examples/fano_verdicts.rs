//! Kähler–Einstein verdicts for anticanonically polarized Fano models via
//! the barycenter criterion: P^2 and P^1 x P^1 admit a KE metric, the first
//! Hirzebruch surface F_1 does not.
//!
//! Run with: cargo run --example fano_verdicts

use spherik::criteria::check_fano_ke;
use spherik::model::{load_spherical_data, normalize};

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in [
        "p2_anticanonical.json",
        "p1xp1_anticanonical.json",
        "f1_toric_anticanonical.json",
    ] {
        let model = normalize(&load_spherical_data(&dir.join(name)).unwrap()).unwrap();
        let verdict = check_fano_ke(&model).unwrap();
        println!("{name}: {}", verdict.outcome.as_str());
        for (k, v) in &verdict.diagnostics {
            println!("    {k}: {v}");
        }
    }
}
