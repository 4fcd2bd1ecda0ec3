//! Rank-one criterion on a family of polarizations of F_1 presented as an
//! SL_2-spherical variety: the sign of L on the valuation-cone generator
//! decides existence, and every polarization here is destabilized.
//!
//! Run with: cargo run --example rank_one_family

use spherik::criteria::check_rank_one;
use spherik::model::{load_spherical_data, normalize};
use spherik::rational::rat_str;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in [
        "f1_sl2_rank1_11.json",
        "f1_sl2_rank1_21.json",
        "f1_sl2_rank1_12.json",
    ] {
        let model = normalize(&load_spherical_data(&dir.join(name)).unwrap()).unwrap();
        let verdict = check_rank_one(&model).unwrap();
        print!("{name}: {}", verdict.outcome.as_str());
        if let Some(w) = &verdict.witness {
            print!(", witness L = {}", rat_str(&w.value));
        }
        println!();
    }
}
