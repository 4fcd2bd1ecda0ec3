//! Hilbert-series cross-check: counts lattice points of dilated polytopes
//! with representation-theoretic multiplicities, fits the normalized
//! equivariant weight w_k/(k d_k) = F0 - F1/k, and compares the sign of F1
//! with the exact value of L.
//!
//! Run with: cargo run --example hilbert_cross_check

use spherik::criteria::hilbert_series_oracle;
use spherik::functional::{eval_l, parse_pl_function, FunctionalData};
use spherik::model::{load_spherical_data, normalize};
use spherik::rational::{rat_str, rat_to_f64};

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let model =
        normalize(&load_spherical_data(&dir.join("p1xp1_11.json")).unwrap()).unwrap();
    let f = parse_pl_function(
        &std::fs::read_to_string(dir.join("crease_half.json")).unwrap(),
    )
    .unwrap();

    let fd = FunctionalData::build(&model).unwrap();
    let l = eval_l(&model, &fd, &f).unwrap();
    let fit = hilbert_series_oracle(&model, &f, 30).unwrap();

    println!("model: unit square, f = max(0, x - 1/2)");
    println!("L(f) exact:  {}", rat_str(&l));
    println!("k_max:       {}", fit.k_max);
    println!("fit from:    k >= {}", fit.fit_from);
    println!("F0:          {:.6e}", fit.f0);
    println!("F1:          {:.6e}", fit.f1);
    println!("residual:    {:.3e}", fit.residual);
    assert!(fit.f1 * rat_to_f64(&l) > 0.0, "F1 must agree in sign with L");
    println!("=> sign(F1) agrees with sign(L)");
}
