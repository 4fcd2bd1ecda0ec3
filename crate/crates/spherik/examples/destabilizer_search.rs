//! Numerical destabilizer search with exact certification: Nelder–Mead over
//! piecewise-linear test functions, slopes projected into the valuation
//! cone, and the best candidate re-evaluated in rational arithmetic.
//!
//! Run with: cargo run --example destabilizer_search

use spherik::criteria::{search_destabilizer, SearchParams};
use spherik::model::{load_spherical_data, normalize};
use spherik::rational::rat_str;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let model =
        normalize(&load_spherical_data(&dir.join("f1_toric_11.json")).unwrap()).unwrap();
    let params = SearchParams { m: 2, budget: 1500, seed: 7 };
    let report = search_destabilizer(&model, &params).unwrap();

    println!("model:        f1_toric_11.json");
    println!("evaluations:  {}", report.evaluations);
    println!("best L value: {}", rat_str(&report.best_value));
    println!("best f:");
    for p in &report.best_f.pieces {
        println!("    c = {}, v = {:?}", rat_str(&p.c), spherik::rational::vec_str(&p.v));
    }
    if num::Signed::is_negative(&report.best_value) {
        println!("=> exact negative value: the candidate certifies NOT_EXISTS");
    } else {
        println!("=> no destabilizer found (not a stability proof)");
    }
}
