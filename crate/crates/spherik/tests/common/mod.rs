//! Shared support for the integration tests: an independently coded toric
//! functional (V-representation polygon clipping, shoelace areas, edge
//! walks) used as an oracle against the main pipeline, and random model
//! generators.

use num::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use spherik::functional::PLFunction;
use spherik::model::{normalize, parse_spherical_data, NormalizedModel};
use spherik::rational::{dot, rat_frac, rat_i64, sub_vec, QVec, Rat};

// ---------------------------------------------------------------------------
// Independent toric functional for rank-two toric models.
//
// Uses none of the crate's integration machinery: regions come from
// Sutherland–Hodgman clipping of the vertex list, interior integrals from
// shoelace areas and centroids, boundary integrals from an exact upper
// envelope walk along each edge with the lattice length of the edge.

pub fn donaldson_l(model: &NormalizedModel, f: &PLFunction) -> Rat {
    assert!(model.is_toric() && model.rank == 2);
    let poly = ccw_vertices(model.polytope.vertices());
    let area = polygon_area(&poly);
    let perimeter: Rat = edge_list(&poly).iter().map(|(a, b)| lattice_length(a, b)).sum();
    let a_const = &perimeter / &area;

    let mut interior = Rat::zero();
    for (j, pj) in f.pieces.iter().enumerate() {
        let mut region = poly.clone();
        for (i, pi) in f.pieces.iter().enumerate() {
            if i == j {
                continue;
            }
            // Keep {piece_j >= piece_i}: <v_j - v_i, q> <= c_j - c_i.
            region = clip(&region, &sub_vec(&pj.v, &pi.v), &(&pj.c - &pi.c));
            if region.len() < 3 {
                break;
            }
        }
        if region.len() >= 3 && !polygon_area(&region).is_zero() {
            interior += affine_integral(&region, &pj.c, &pj.v);
        }
    }

    let mut boundary = Rat::zero();
    for (p, q) in edge_list(&poly) {
        boundary += edge_integral(f, &p, &q);
    }
    boundary - a_const * interior
}

/// Sorts the vertex set counterclockwise around its average.
fn ccw_vertices(verts: &[QVec]) -> Vec<QVec> {
    let n = rat_i64(verts.len() as i64);
    let cx: Rat = verts.iter().map(|v| v[0].clone()).sum::<Rat>() / &n;
    let cy: Rat = verts.iter().map(|v| v[1].clone()).sum::<Rat>() / &n;
    let mut out = verts.to_vec();
    let half = |dx: &Rat, dy: &Rat| -> u8 {
        // 0 for the upper half plane (dy > 0, or dy = 0 and dx > 0).
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) { 0 } else { 1 }
    };
    out.sort_by(|p, q| {
        let (pdx, pdy) = (&p[0] - &cx, &p[1] - &cy);
        let (qdx, qdy) = (&q[0] - &cx, &q[1] - &cy);
        let (hp, hq) = (half(&pdx, &pdy), half(&qdx, &qdy));
        if hp != hq {
            return hp.cmp(&hq);
        }
        // Same half plane: order by cross product.
        let cross = &pdx * &qdy - &pdy * &qdx;
        if cross.is_positive() {
            std::cmp::Ordering::Less
        } else if cross.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    out
}

fn edge_list(poly: &[QVec]) -> Vec<(QVec, QVec)> {
    (0..poly.len())
        .map(|i| (poly[i].clone(), poly[(i + 1) % poly.len()].clone()))
        .collect()
}

fn polygon_area(poly: &[QVec]) -> Rat {
    let mut two_a = Rat::zero();
    for (p, q) in edge_list(poly) {
        two_a += &p[0] * &q[1] - &p[1] * &q[0];
    }
    num::Signed::abs(&(two_a / rat_i64(2)))
}

/// Integral of c - <v, q> over the polygon: A * (c - <v, centroid>).
fn affine_integral(poly: &[QVec], c: &Rat, v: &QVec) -> Rat {
    let mut two_a = Rat::zero();
    let mut sx = Rat::zero();
    let mut sy = Rat::zero();
    for (p, q) in edge_list(poly) {
        let w = &p[0] * &q[1] - &p[1] * &q[0];
        sx += (&p[0] + &q[0]) * &w;
        sy += (&p[1] + &q[1]) * &w;
        two_a += w;
    }
    let area = &two_a / rat_i64(2);
    // Signed consistently: centroid formula divides by 6A with the same sign.
    let cx = sx / (rat_i64(3) * &two_a);
    let cy = sy / (rat_i64(3) * &two_a);
    num::Signed::abs(&area) * (c - (&v[0] * cx + &v[1] * cy))
}

fn clip(poly: &[QVec], normal: &QVec, bound: &Rat) -> Vec<QVec> {
    if poly.is_empty() {
        return vec![];
    }
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let cur = &poly[i];
        let nxt = &poly[(i + 1) % poly.len()];
        let dc = bound - dot(normal, cur);
        let dn = bound - dot(normal, nxt);
        let cur_in = !dc.is_negative();
        if cur_in {
            out.push(cur.clone());
        }
        if dc.is_negative() != dn.is_negative() && !(&dc - &dn).is_zero() {
            let t = &dc / (&dc - &dn);
            out.push(vec![
                &cur[0] + &t * (&nxt[0] - &cur[0]),
                &cur[1] + &t * (&nxt[1] - &cur[1]),
            ]);
        }
    }
    out
}

/// Lattice length of a segment with rational endpoints: the factor by which
/// the primitive integer direction fits into the difference.
fn lattice_length(a: &QVec, b: &QVec) -> Rat {
    let d = sub_vec(b, a);
    let prim = spherik::rational::primitive_direction(&d).expect("nonzero edge");
    let i = prim.iter().position(|x| !x.is_zero()).unwrap();
    &d[i] / &prim[i]
}

/// Integral of f along the edge against the lattice measure, by an exact
/// upper-envelope walk in the edge parameter.
fn edge_integral(f: &PLFunction, a: &QVec, b: &QVec) -> Rat {
    let len = lattice_length(a, b);
    // Piece j restricted to q(t) = a + t (b - a) is the line s_j + t r_j.
    let lines: Vec<(Rat, Rat)> = f
        .pieces
        .iter()
        .map(|p| {
            let s = &p.c - dot(&p.v, a);
            let r = -dot(&p.v, &sub_vec(b, a));
            (s, r)
        })
        .collect();
    let mut ts: Vec<Rat> = vec![rat_i64(0), rat_i64(1)];
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let dr = &lines[i].1 - &lines[j].1;
            if dr.is_zero() {
                continue;
            }
            let t = (&lines[j].0 - &lines[i].0) / dr;
            if t.is_positive() && t < rat_i64(1) {
                ts.push(t);
            }
        }
    }
    ts.sort();
    ts.dedup();
    let eval = |t: &Rat| -> Rat {
        lines.iter().map(|(s, r)| s + r * t).max().unwrap()
    };
    let mut total = Rat::zero();
    for w in ts.windows(2) {
        let (t0, t1) = (&w[0], &w[1]);
        total += (eval(t0) + eval(t1)) / rat_i64(2) * (t1 - t0);
    }
    total * len
}

// ---------------------------------------------------------------------------
// Random instances.

pub fn rand_rat(rng: &mut ChaCha8Rng, denom: i64, max_num: i64) -> Rat {
    rat_frac(rng.gen_range(-max_num..=max_num), denom)
}

/// Random full-dimensional bounded toric model of the given rank: a box
/// with random rational corner plus a few random cuts.
pub fn random_toric_model(rng: &mut ChaCha8Rng, rank: usize) -> NormalizedModel {
    loop {
        let mut ineqs = Vec::new();
        for i in 0..rank {
            let mut lo = vec!["0".to_string(); rank];
            lo[i] = "-1".into();
            ineqs.push(serde_json::json!({"normal": lo, "bound": "0"}));
            let mut hi = vec!["0".to_string(); rank];
            hi[i] = "1".into();
            let top = rat_frac(rng.gen_range(4..=16), 8);
            ineqs.push(serde_json::json!({
                "normal": hi,
                "bound": spherik::rational::rat_str(&top)
            }));
        }
        for _ in 0..rng.gen_range(0..=2) {
            let normal: Vec<String> = (0..rank)
                .map(|_| rng.gen_range(-2i64..=2).to_string())
                .collect();
            if normal.iter().all(|s| s == "0") {
                continue;
            }
            ineqs.push(serde_json::json!({
                "normal": normal,
                "bound": rng.gen_range(1..=4).to_string()
            }));
        }
        let identity: Vec<Vec<String>> = (0..rank)
            .map(|j| (0..rank).map(|i| if i == j { "1" } else { "0" }.to_string()).collect())
            .collect();
        let doc = serde_json::json!({
            "ambient_dim": rank,
            "gram": identity.clone(),
            "positive_roots": [],
            "lattice_basis": identity.clone(),
            "chi": vec!["0".to_string(); rank],
            "polytope": {"inequalities": ineqs},
            "valuation_cone": {"generators": [], "lineality": identity},
        })
        .to_string();
        match parse_spherical_data(&doc).and_then(|d| normalize(&d)) {
            Ok(m) if m.polytope.is_full_dimensional() => return m,
            _ => continue,
        }
    }
}

/// Random spherical model with roots: positive-orthant polytope shifted off
/// the walls, diagonal Gram matrix, nonnegative integer roots (dominance is
/// then automatic), horospherical valuation cone.
pub fn random_spherical_model(rng: &mut ChaCha8Rng, rank: usize, nroots: usize) -> NormalizedModel {
    loop {
        let mut ineqs = Vec::new();
        for i in 0..rank {
            let mut lo = vec!["0".to_string(); rank];
            lo[i] = "-1".into();
            ineqs.push(serde_json::json!({"normal": lo, "bound": "-1"}));
            let mut hi = vec!["0".to_string(); rank];
            hi[i] = "1".into();
            ineqs.push(serde_json::json!({"normal": hi, "bound": (2 + rng.gen_range(0..=2)).to_string()}));
        }
        let identity: Vec<Vec<String>> = (0..rank)
            .map(|j| (0..rank).map(|i| if i == j { "1" } else { "0" }.to_string()).collect())
            .collect();
        let gram: Vec<Vec<String>> = (0..rank)
            .map(|j| {
                (0..rank)
                    .map(|i| {
                        if i == j {
                            rng.gen_range(1..=3).to_string()
                        } else {
                            "0".to_string()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut roots = Vec::new();
        for _ in 0..nroots {
            let alpha: Vec<String> =
                (0..rank).map(|_| rng.gen_range(0i64..=2).to_string()).collect();
            if alpha.iter().all(|s| s == "0") {
                continue;
            }
            roots.push(alpha);
        }
        let doc = serde_json::json!({
            "ambient_dim": rank,
            "gram": gram,
            "positive_roots": roots,
            "lattice_basis": identity.clone(),
            "chi": vec!["0".to_string(); rank],
            "polytope": {"inequalities": ineqs},
            "valuation_cone": {"generators": [], "lineality": identity},
        })
        .to_string();
        match parse_spherical_data(&doc).and_then(|d| normalize(&d)) {
            Ok(m) if m.polytope.is_full_dimensional() => return m,
            _ => continue,
        }
    }
}

/// Random convex PL function with small rational data.
pub fn random_pl(rng: &mut ChaCha8Rng, rank: usize, max_pieces: usize) -> PLFunction {
    let k = rng.gen_range(1..=max_pieces);
    let mut pieces = Vec::new();
    for _ in 0..k {
        let c = rand_rat(rng, 8, 16);
        let v: QVec = (0..rank).map(|_| rand_rat(rng, 4, 8)).collect();
        pieces.push((c, v));
    }
    PLFunction::new(pieces)
}
