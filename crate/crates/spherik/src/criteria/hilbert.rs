//! Hilbert-series cross check: counts sections of powers of the line bundle
//! by lattice points with Weyl-dimension multiplicities, weights them by the
//! test function, and fits the expansion w_k/(k d_k) = F0 - F1/k.
//!
//! Conventions: the weight of a lattice point p of the k-dilated polytope is
//! -ceil(k f(p/k)); with this sign the fitted F1 agrees in sign with the
//! exact functional L, up to a model-dependent positive factor. The oracle
//! therefore checks sign and cross-instance ratio consistency only, never
//! exact values.

use num::{One, Zero};

use crate::error::Error;
use crate::functional::PLFunction;
use crate::model::{kappa, NormalizedModel};
use crate::rational::{dot, rat_i64, rat_to_f64, QVec, Rat};

#[derive(Clone, Debug)]
pub struct HilbertFit {
    /// Dilations enumerated: 1..=k_max.
    pub k_max: u32,
    /// Dilations actually entering the least-squares fit (the asymptotic tail).
    pub fit_from: u32,
    /// (k, w_k / (k d_k)) for every enumerated k.
    pub samples: Vec<(u32, f64)>,
    pub f0: f64,
    pub f1: f64,
    /// Root-mean-square residual of the fit over the tail.
    pub residual: f64,
}

/// Upper bound on the total number of candidate lattice points, summed over
/// all dilations; larger requests are rejected up front.
const POINT_BUDGET: f64 = 2e7;
const MIN_FIT_SAMPLES: u32 = 4;

pub fn hilbert_series_oracle(
    model: &NormalizedModel,
    f: &PLFunction,
    k_max: u32,
) -> Result<HilbertFit, Error> {
    let r = model.rank;
    if k_max < 2 * MIN_FIT_SAMPLES {
        return Err(Error::Invalid(format!(
            "k_max must be at least {} so the asymptotic tail has {} samples",
            2 * MIN_FIT_SAMPLES,
            MIN_FIT_SAMPLES
        )));
    }

    // Per-coordinate bounds of the polytope, for the enumeration box.
    let mut lo = vec![f64::INFINITY; r];
    let mut hi = vec![f64::NEG_INFINITY; r];
    for v in model.polytope.vertices() {
        for i in 0..r {
            let x = rat_to_f64(&v[i]);
            lo[i] = lo[i].min(x);
            hi[i] = hi[i].max(x);
        }
    }
    let per_k: f64 = (0..r).map(|i| hi[i] - lo[i] + 1.0).product();
    let total: f64 = (1..=k_max).map(|k| {
        let k = k as f64;
        (0..r).map(|i| k * (hi[i] - lo[i]) + 1.0).product::<f64>()
    }).sum();
    let _ = per_k;
    if !total.is_finite() || total > POINT_BUDGET {
        return Err(Error::Invalid(format!(
            "lattice enumeration budget exceeded ({total:.2e} candidate points)"
        )));
    }

    let mut samples = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let (d_k, w_k) = dilation_sums(model, f, k, &lo, &hi)?;
        if d_k.is_zero() {
            return Err(Error::Invalid(format!("dilation {k} contains no lattice points")));
        }
        let ratio = rat_to_f64(&(&w_k / (&d_k * rat_i64(k as i64))));
        samples.push((k, ratio));
    }

    // Fit on the asymptotic tail: the larger half of the range.
    let n_tail = (k_max / 2).max(MIN_FIT_SAMPLES);
    let fit_from = k_max - n_tail + 1;
    let tail: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(k, _)| *k >= fit_from)
        .map(|(k, y)| (1.0 / *k as f64, *y))
        .collect();
    let (f0, f1, residual) = fit_line(&tail);
    Ok(HilbertFit { k_max, fit_from, samples, f0, f1, residual })
}

/// d_k and w_k for one dilation: sum of Weyl dimensions, and the weighted
/// sum with weight -ceil(k f(p/k)).
fn dilation_sums(
    model: &NormalizedModel,
    f: &PLFunction,
    k: u32,
    lo: &[f64],
    hi: &[f64],
) -> Result<(Rat, Rat), Error> {
    let r = model.rank;
    let kf = k as f64;
    let kr = rat_i64(k as i64);
    let lo_i: Vec<i64> = lo.iter().map(|&x| (kf * x).floor() as i64).collect();
    let hi_i: Vec<i64> = hi.iter().map(|&x| (kf * x).ceil() as i64).collect();

    let mut d_k = Rat::zero();
    let mut w_k = Rat::zero();
    let mut idx = lo_i.clone();
    'outer: loop {
        let p: QVec = idx.iter().map(|&x| rat_i64(x)).collect();
        let inside = model
            .polytope
            .inequalities
            .iter()
            .all(|h| dot(&h.normal, &p) <= &h.bound * &kr);
        if inside {
            let dim = weyl_dimension(model, &p, k);
            // k f(p/k) is exact: max over pieces of k c_j - <v_j, p>.
            let scaled = f
                .pieces
                .iter()
                .map(|piece| &piece.c * &kr - dot(&piece.v, &p))
                .max()
                .unwrap();
            let weight = -scaled.ceil();
            w_k += &dim * weight;
            d_k += dim;
        }
        // Odometer over the box.
        for i in 0..r {
            idx[i] += 1;
            if idx[i] <= hi_i[i] {
                continue 'outer;
            }
            idx[i] = lo_i[i];
        }
        break;
    }
    Ok((d_k, w_k))
}

/// dim V_lambda = prod kappa(alpha, lambda + varpi) / kappa(alpha, varpi)
/// over the positive roots, with lambda the ambient weight of the lattice
/// point p of the k-dilated polytope.
fn weyl_dimension(model: &NormalizedModel, p: &[Rat], k: u32) -> Rat {
    let mut dim = Rat::one();
    let kr = rat_i64(k as i64);
    for (idx, alpha) in model.positive_roots.iter().enumerate() {
        let (c0, lin) = &model.roots_affine[idx];
        let denom = kappa(&model.gram, alpha, &model.varpi);
        // kappa(alpha, lambda) in lattice coordinates, dilated by k.
        let num = c0 * &kr + dot(lin, p) + &denom;
        dim *= num / denom;
    }
    dim
}

/// Least squares for y = f0 - f1 * x; returns (f0, f1, rms residual).
fn fit_line(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|(x, _)| x).sum();
    let sy: f64 = points.iter().map(|(_, y)| y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / det;
    let f0 = (sy - slope * sx) / n;
    let f1 = -slope;
    let rss: f64 = points
        .iter()
        .map(|(x, y)| {
            let e = y - (f0 - f1 * x);
            e * e
        })
        .sum();
    (f0, f1, (rss / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{normalize, parse_spherical_data};
    use crate::rational::{rat_frac, zeros};

    fn unit_square() -> NormalizedModel {
        let doc = serde_json::json!({
            "ambient_dim": 2,
            "gram": [["1","0"],["0","1"]],
            "positive_roots": [],
            "lattice_basis": [["1","0"],["0","1"]],
            "chi": ["0","0"],
            "polytope": {"inequalities": [
                {"normal": ["-1","0"], "bound": "0"},
                {"normal": ["0","-1"], "bound": "0"},
                {"normal": ["1","0"], "bound": "1"},
                {"normal": ["0","1"], "bound": "1"},
            ]},
            "valuation_cone": {"generators": [], "lineality": [["1","0"],["0","1"]]},
        })
        .to_string();
        normalize(&parse_spherical_data(&doc).unwrap()).unwrap()
    }

    #[test]
    fn toric_dimension_is_ehrhart() {
        // d_k of the unit square is (k+1)^2.
        let m = unit_square();
        let f = PLFunction::constant(2, rat_i64(0));
        let fit = hilbert_series_oracle(&m, &f, 10).unwrap();
        // With f = 0 every weight is zero.
        assert!(fit.f1.abs() < 1e-12, "f1 = {}", fit.f1);
        assert!(fit.f0.abs() < 1e-12);
        // Spot check the counts through a direct recount.
        let (d3, w3) = dilation_sums(&m, &f, 3, &[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(d3, rat_i64(16));
        assert_eq!(w3, rat_i64(0));
    }

    #[test]
    fn segment_absolute_value_positive_f1() {
        let doc = serde_json::json!({
            "ambient_dim": 1,
            "gram": [["1"]],
            "positive_roots": [],
            "lattice_basis": [["1"]],
            "chi": ["0"],
            "polytope": {"inequalities": [
                {"normal": ["1"], "bound": "1"}, {"normal": ["-1"], "bound": "1"}
            ]},
            "valuation_cone": {"generators": [], "lineality": [["1"]]},
        })
        .to_string();
        let m = normalize(&parse_spherical_data(&doc).unwrap()).unwrap();
        // f(q) = |q| = max(-q, q).
        let f = PLFunction::new(vec![
            (rat_i64(0), vec![rat_i64(1)]),
            (rat_i64(0), vec![rat_i64(-1)]),
        ]);
        let fit = hilbert_series_oracle(&m, &f, 40).unwrap();
        assert!(fit.f1 > 0.0, "f1 = {}", fit.f1);
    }

    #[test]
    fn square_crease_sign_matches_functional() {
        // f = max(0, x - 1/2) on the unit square has L = 1/4 > 0; the
        // fitted F1 must come out positive as well.
        let m = unit_square();
        let f = PLFunction::new(vec![
            (rat_i64(0), zeros(2)),
            (rat_frac(-1, 2), vec![rat_i64(-1), rat_i64(0)]),
        ]);
        let fit = hilbert_series_oracle(&m, &f, 40).unwrap();
        assert!(fit.f1 > 0.0, "f1 = {}", fit.f1);
    }

    #[test]
    fn budget_guard() {
        let m = unit_square();
        let f = PLFunction::constant(2, rat_i64(0));
        assert!(hilbert_series_oracle(&m, &f, 50_000).is_err());
        assert!(hilbert_series_oracle(&m, &f, 3).is_err());
    }
}
