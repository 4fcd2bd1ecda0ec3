//! Heuristic destabilizer search: multi-start Nelder–Mead over piece lists
//! of bounded size, minimizing L normalized by the mass of f - min f.
//!
//! Floating point only steers the walk; every candidate is snapped to a
//! rational grid, its slopes projected into the valuation cone, and L
//! evaluated exactly, so a negative incumbent is a true certificate. The
//! search proves nothing when it comes up empty.

use num::{BigInt, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::functional::{eval_l, linearity_domains, FunctionalData, PLFunction};
use crate::geometry::integrate::integrate_polynomial;
use crate::model::NormalizedModel;
use crate::polynomial::Poly;
use crate::rational::{
    dot, neg_vec, rat_i64, rat_to_f64, scale_vec, sub_vec, zeros, QVec, Rat,
};

#[derive(Clone, Debug)]
pub struct SearchParams {
    /// Maximum number of pieces (hence of linearity domains).
    pub m: usize,
    /// Total exact evaluations allowed.
    pub budget: usize,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { m: 2, budget: 2000, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub m: usize,
    pub best_f: PLFunction,
    /// Exact L of best_f; negative values certify instability.
    pub best_value: Rat,
    /// Normalized incumbent after each restart.
    pub trace: Vec<f64>,
    pub seed: u64,
    pub evaluations: usize,
}

/// Denominator of the rational grid candidates are snapped to.
const SNAP_DENOM: i64 = 1024;

pub fn search_destabilizer(
    model: &NormalizedModel,
    params: &SearchParams,
) -> Result<SearchReport, Error> {
    if params.m < 2 {
        return Err(Error::Invalid("the search needs room for at least two pieces".into()));
    }
    let fd = FunctionalData::build(model)?;
    let r = model.rank;
    let nparams = params.m * (1 + r);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    // The constant function is the neutral incumbent with L = 0 exactly.
    let mut best = Incumbent {
        f: PLFunction::constant(r, rat_i64(0)),
        value: rat_i64(0),
        normalized: 0.0,
    };
    let mut evals = 0usize;
    let mut trace = Vec::new();

    while evals < params.budget {
        let start: Vec<f64> = (0..nparams).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let local = nelder_mead(
            &start,
            params.budget - evals,
            &mut |x| {
                evals += 1;
                objective(model, &fd, params.m, x)
                    .map(|o| o.as_ref().map_or(0.0, |i| i.normalized))
                    .unwrap_or(f64::INFINITY)
            },
            &mut rng,
        );
        if let Ok(Some(inc)) = objective(model, &fd, params.m, &local) {
            evals += 1;
            if inc.normalized < best.normalized {
                best = inc;
            }
        }
        trace.push(best.normalized);
    }

    Ok(SearchReport {
        m: params.m,
        best_f: best.f,
        best_value: best.value,
        trace,
        seed: params.seed,
        evaluations: evals,
    })
}

struct Incumbent {
    f: PLFunction,
    value: Rat,
    normalized: f64,
}

/// Snaps a float parameter vector to an admissible rational PL function and
/// evaluates the normalized functional exactly. None means the candidate
/// degenerates to a constant.
fn objective(
    model: &NormalizedModel,
    fd: &FunctionalData,
    m: usize,
    x: &[f64],
) -> Result<Option<Incumbent>, Error> {
    let r = model.rank;
    let mut pieces = Vec::with_capacity(m);
    for j in 0..m {
        let chunk = &x[j * (1 + r)..(j + 1) * (1 + r)];
        let c = snap(chunk[0]);
        let v: QVec = chunk[1..].iter().map(|&t| snap(t)).collect();
        let v = project_to_cone(model, v);
        pieces.push((c, v));
    }
    let f = PLFunction::new(pieces);
    let value = eval_l(model, fd, &f)?;
    let Some(mass) = normalization_mass(model, fd, &f)? else {
        return Ok(None);
    };
    let normalized = rat_to_f64(&value) / rat_to_f64(&mass);
    Ok(Some(Incumbent { f, value, normalized }))
}

fn snap(x: f64) -> Rat {
    let x = if x.is_finite() { x.clamp(-1e6, 1e6) } else { 0.0 };
    Rat::new(BigInt::from((x * SNAP_DENOM as f64).round() as i64), BigInt::from(SNAP_DENOM))
}

/// Moves v into the valuation cone by repeatedly reflecting off violated
/// dual half-spaces; falls back to zero (always admissible) if the
/// iteration stalls.
fn project_to_cone(model: &NormalizedModel, mut v: QVec) -> QVec {
    let dual = &model.valuation_cone_dual;
    let inside = |v: &QVec| crate::geometry::cone::halfspace_rep_contains(dual, v);
    if inside(&v) {
        return v;
    }
    for l in &dual.lineality {
        // Project onto the hyperplane <l, v> = 0.
        let c = dot(l, &v) / dot(l, l);
        v = sub_vec(&v, &scale_vec(&c, l));
    }
    for _ in 0..16 {
        if inside(&v) {
            return v;
        }
        for g in &dual.generators {
            let s = dot(g, &v);
            if s.is_negative() {
                let c = s / dot(g, g);
                v = sub_vec(&v, &scale_vec(&c, g));
            }
        }
    }
    if inside(&v) { v } else { zeros(model.rank) }
}

/// Integral of (f - min f) P over the polytope, or None when f is constant
/// on it. min f is exact: on each linearity region the piece is affine, so
/// its minimum sits at a region vertex.
fn normalization_mass(
    model: &NormalizedModel,
    fd: &FunctionalData,
    f: &PLFunction,
) -> Result<Option<Rat>, Error> {
    let dec = linearity_domains(model, f)?;
    let mut minimum: Option<Rat> = None;
    let mut integral = Rat::zero();
    for (j, region) in &dec.regions {
        let piece = &dec.pieces[*j];
        for w in region.vertices() {
            let val = piece.eval(w);
            if minimum.as_ref().map_or(true, |m| &val < m) {
                minimum = Some(val);
            }
        }
        let affine = Poly::affine(&piece.c, &neg_vec(&piece.v));
        integral += integrate_polynomial(&affine.mul(&fd.p), region)?;
    }
    let minimum = minimum.ok_or(Error::Degenerate)?;
    let mass = integral - minimum * &fd.vol_p;
    Ok(if mass.is_positive() { Some(mass) } else { None })
}

/// Plain Nelder–Mead with random initial simplex scale; stops when the
/// spread collapses or the evaluation allowance is used up.
fn nelder_mead(
    start: &[f64],
    allowance: usize,
    obj: &mut impl FnMut(&[f64]) -> f64,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let scale = rng.gen_range(0.2..1.0);
    simplex.push((start.to_vec(), obj(start)));
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += scale;
        let v = obj(&p);
        simplex.push((p, v));
    }
    let mut used = n + 1;

    while used + 4 < allowance {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        if !spread.is_finite() || spread.abs() < 1e-12 {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|(p, _)| p[i]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let reflect: Vec<f64> =
            (0..n).map(|i| centroid[i] + (centroid[i] - worst.0[i])).collect();
        let fr = obj(&reflect);
        used += 1;
        if fr < simplex[0].1 {
            let expand: Vec<f64> =
                (0..n).map(|i| centroid[i] + 2.0 * (centroid[i] - worst.0[i])).collect();
            let fe = obj(&expand);
            used += 1;
            simplex[n] = if fe < fr { (expand, fe) } else { (reflect, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflect, fr);
        } else {
            let contract: Vec<f64> =
                (0..n).map(|i| centroid[i] + 0.5 * (worst.0[i] - centroid[i])).collect();
            let fc = obj(&contract);
            used += 1;
            if fc < worst.1 {
                simplex[n] = (contract, fc);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let shrunk: Vec<f64> =
                        (0..n).map(|i| best[i] + 0.5 * (entry.0[i] - best[i])).collect();
                    entry.1 = obj(&shrunk);
                    entry.0 = shrunk;
                    used += 1;
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.remove(0).0
}
