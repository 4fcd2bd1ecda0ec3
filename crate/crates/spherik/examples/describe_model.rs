//! Loads a model and prints its derived combinatorial data: rank, weight
//! densities P and Q, the constant a, volumes and barycenter.
//!
//! Run with: cargo run --example describe_model

use spherik::functional::{weighted_barycenter, FunctionalData};
use spherik::model::{load_spherical_data, normalize};
use spherik::rational::{rat_str, vec_str};

fn main() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/p2_anticanonical.json");
    let model = normalize(&load_spherical_data(&path).unwrap()).unwrap();
    let fd = FunctionalData::build(&model).unwrap();

    println!("model:         {}", path.display());
    println!("rank:          {}", model.rank);
    println!("toric:         {}", model.is_toric());
    println!("horospherical: {}", model.is_horospherical());
    println!("P:             {}", fd.p);
    println!("Q:             {}", fd.q);
    println!("a:             {}", rat_str(&fd.a));
    println!("vol(P dmu):    {}", rat_str(&fd.vol_p));
    println!("bd(P dsigma):  {}", rat_str(&fd.boundary_p));
    let b = weighted_barycenter(&model, &fd).unwrap();
    println!("barycenter:    {:?}", vec_str(&b));
    println!("2*varpi_X:     {:?}", vec_str(&model.two_varpi_x));
}
