//! Evaluates the stability functional L on a convex piecewise-linear test
//! function, in exact rational arithmetic.
//!
//! Run with: cargo run --example evaluate_functional

use spherik::functional::{eval_l, linearity_domains, parse_pl_function, FunctionalData};
use spherik::model::{load_spherical_data, normalize};
use spherik::rational::rat_str;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let model =
        normalize(&load_spherical_data(&dir.join("p1xp1_11.json")).unwrap()).unwrap();
    let f = parse_pl_function(
        &std::fs::read_to_string(dir.join("crease_half.json")).unwrap(),
    )
    .unwrap();

    let fd = FunctionalData::build(&model).unwrap();
    let value = eval_l(&model, &fd, &f).unwrap();
    let dec = linearity_domains(&model, &f).unwrap();

    println!("polytope: unit square, f = max(0, x - 1/2)");
    println!("a:     {}", rat_str(&fd.a));
    println!("nld:   {}", dec.nld());
    println!("L(f):  {}", rat_str(&value));
    assert_eq!(rat_str(&value), "1/4");
}
