//! The weight polynomials P and Q, the normalizing constant a, and exact
//! evaluation of the Mabuchi-type functional L on piecewise-linear test
//! functions.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::cone::halfspace_rep_contains;
use crate::geometry::integrate::{facet_region_integral, integrate_polynomial};
use crate::geometry::RationalPolytope;
use crate::model::{kappa, NormalizedModel};
use crate::polynomial::Poly;
use crate::rational::{
    add_vec, dot, neg_vec, parse_rat, parse_vec, rat_str, sub_vec, vec_str, QVec, Rat,
};

/// One piece (c, v) of a convex PL function f(q) = max_j (c_j - <v_j, q>).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Piece {
    pub c: Rat,
    pub v: QVec,
}

impl Piece {
    pub fn eval(&self, q: &[Rat]) -> Rat {
        &self.c - dot(&self.v, q)
    }
}

/// Convex piecewise-linear test function; admissible when every v_j lies in
/// the valuation cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    pub pieces: Vec<Piece>,
}

impl PLFunction {
    pub fn new(pieces: Vec<(Rat, QVec)>) -> Self {
        PLFunction { pieces: pieces.into_iter().map(|(c, v)| Piece { c, v }).collect() }
    }

    pub fn constant(rank: usize, c: Rat) -> Self {
        PLFunction::new(vec![(c, crate::rational::zeros(rank))])
    }

    /// Single affine piece c - <v, q>.
    pub fn affine(c: Rat, v: QVec) -> Self {
        PLFunction::new(vec![(c, v)])
    }

    pub fn eval(&self, q: &[Rat]) -> Rat {
        self.pieces.iter().map(|p| p.eval(q)).max().expect("nonempty piece list")
    }

    /// Piecewise sum: all pairwise sums of pieces. Represents f + g.
    pub fn piecewise_sum(&self, other: &PLFunction) -> PLFunction {
        let mut pieces = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                pieces.push((&a.c + &b.c, add_vec(&a.v, &b.v)));
            }
        }
        PLFunction::new(pieces)
    }

    /// t * f for t > 0.
    pub fn scaled(&self, t: &Rat) -> PLFunction {
        assert!(t.is_positive());
        PLFunction {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { c: &p.c * t, v: crate::rational::scale_vec(t, &p.v) })
                .collect(),
        }
    }

    fn deduped(&self) -> Vec<Piece> {
        let mut ps = self.pieces.clone();
        ps.sort();
        ps.dedup();
        ps
    }
}

// JSON schema: {"pieces": [{"c": "p/q", "v": ["..", ".."]}]}
#[derive(Serialize, Deserialize)]
struct RawPL {
    pieces: Vec<RawPiece>,
}

#[derive(Serialize, Deserialize)]
struct RawPiece {
    c: String,
    v: Vec<String>,
}

pub fn parse_pl_function(document: &str) -> Result<PLFunction, Error> {
    let raw: RawPL = serde_json::from_str(document)?;
    if raw.pieces.is_empty() {
        return Err(Error::Invalid("PL function needs at least one piece".into()));
    }
    let mut pieces = Vec::new();
    for p in &raw.pieces {
        pieces.push((parse_rat(&p.c)?, parse_vec(&p.v)?));
    }
    Ok(PLFunction::new(pieces))
}

pub fn pl_function_to_json(f: &PLFunction) -> serde_json::Value {
    serde_json::json!({
        "pieces": f.pieces.iter().map(|p| serde_json::json!({
            "c": rat_str(&p.c),
            "v": vec_str(&p.v),
        })).collect::<Vec<_>>()
    })
}

/// Subdivision of the moment polytope into the closed regions where each
/// piece attains the maximum; only full-dimensional regions are kept.
#[derive(Clone, Debug)]
pub struct LinearityDecomposition {
    pub regions: Vec<(usize, RationalPolytope)>,
    /// Piece indices (into the deduplicated list) never attaining the max on
    /// a full-dimensional subset.
    pub redundant: Vec<usize>,
    pub pieces: Vec<Piece>,
}

impl LinearityDecomposition {
    pub fn nld(&self) -> usize {
        self.regions.len()
    }
}

/// Computes the linearity regions of f on the moment polytope.
pub fn linearity_domains(
    model: &NormalizedModel,
    f: &PLFunction,
) -> Result<LinearityDecomposition, Error> {
    let pieces = f.deduped();
    let polytope = &model.polytope;
    let mut regions = Vec::new();
    let mut redundant = Vec::new();
    for (j, pj) in pieces.iter().enumerate() {
        let extra = region_inequalities(&pieces, j);
        let mut raw: Vec<(QVec, Rat)> = polytope
            .inequalities
            .iter()
            .map(|h| (h.normal.clone(), h.bound.clone()))
            .collect();
        raw.extend(extra);
        match RationalPolytope::from_inequalities(model.rank, raw) {
            Ok(p) if p.is_full_dimensional() => regions.push((j, p)),
            Ok(_) | Err(Error::EmptyPolytope) => redundant.push(j),
            Err(e) => return Err(e),
        }
        let _ = pj;
    }
    Ok(LinearityDecomposition { regions, redundant, pieces })
}

/// Inequalities selecting the region where piece j attains the max:
/// <v_j - v_i, q> <= c_j - c_i for all i.
fn region_inequalities(pieces: &[Piece], j: usize) -> Vec<(QVec, Rat)> {
    let pj = &pieces[j];
    pieces
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, pi)| (sub_vec(&pj.v, &pi.v), &pj.c - &pi.c))
        .collect()
}

/// Product test functions are the affine ones with slope in the linear part
/// of the valuation cone.
pub fn is_product_function(model: &NormalizedModel, f: &PLFunction) -> Result<bool, Error> {
    let dec = linearity_domains(model, f)?;
    if dec.nld() != 1 {
        return Ok(false);
    }
    let j = dec.regions[0].0;
    let v = &dec.pieces[j].v;
    Ok(model.valuation_cone.contains(v) && model.valuation_cone.contains(&neg_vec(v)))
}

/// The weight polynomials, their integrals, and the constant making L vanish
/// on constants.
#[derive(Clone, Debug)]
pub struct FunctionalData {
    pub p: Poly,
    pub q: Poly,
    pub a: Rat,
    pub vol_p: Rat,
    pub boundary_p: Rat,
    pub int_q: Rat,
}

/// P = prod of active affine root forms over kappa(alpha, varpi); Q in the
/// cancelled polynomial form (sum of the products omitting one factor).
pub fn weight_polynomials(model: &NormalizedModel) -> Result<(Poly, Poly), Error> {
    let r = model.rank;
    let mut factors = Vec::new();
    for &k in &model.active_roots {
        let (c0, lin) = &model.roots_affine[k];
        let denom = kappa(&model.gram, &model.positive_roots[k], &model.varpi);
        if denom.is_zero() {
            return Err(Error::Invalid(format!(
                "active root {k} pairs to zero with the half-sum of positive roots"
            )));
        }
        factors.push(Poly::affine(c0, lin).scale(&(Rat::one() / denom)));
    }
    let mut p = Poly::one(r);
    for f in &factors {
        p = p.mul(f);
    }
    let mut q = Poly::zero(r);
    for skip in 0..factors.len() {
        let mut term = Poly::one(r);
        for (i, f) in factors.iter().enumerate() {
            if i != skip {
                term = term.mul(f);
            }
        }
        q = q.add(&term);
    }
    Ok((p, q))
}

impl FunctionalData {
    pub fn build(model: &NormalizedModel) -> Result<Self, Error> {
        let (p, q) = weight_polynomials(model)?;
        let vol_p = integrate_polynomial(&p, &model.polytope)?;
        if !vol_p.is_positive() {
            return Err(Error::Invalid("integral of P over the polytope is not positive".into()));
        }
        let boundary_p = crate::geometry::integrate_polynomial_boundary(&p, &model.polytope)?;
        let int_q = integrate_polynomial(&q, &model.polytope)?;
        let a = (&boundary_p + &int_q) / &vol_p;
        Ok(FunctionalData { p, q, a, vol_p, boundary_p, int_q })
    }
}

/// Barycenter of the moment polytope against P dmu, in ambient weight
/// coordinates.
pub fn weighted_barycenter(model: &NormalizedModel, fd: &FunctionalData) -> Result<QVec, Error> {
    let r = model.rank;
    let mut bary_q = Vec::with_capacity(r);
    for i in 0..r {
        let qi_p = Poly::var(r, i).mul(&fd.p);
        bary_q.push(integrate_polynomial(&qi_p, &model.polytope)? / &fd.vol_p);
    }
    Ok(model.to_ambient(&bary_q))
}

fn check_slopes(model: &NormalizedModel, f: &PLFunction) -> Result<(), Error> {
    for (j, piece) in f.pieces.iter().enumerate() {
        if !halfspace_rep_contains(&model.valuation_cone_dual, &piece.v) {
            return Err(Error::SlopeOutsideCone(j));
        }
    }
    Ok(())
}

/// Exact value of
/// L(f) = int_{boundary} f P dsigma - int f (aP - Q) dmu,
/// computed region by region so every integrand is polynomial.
pub fn eval_l(model: &NormalizedModel, fd: &FunctionalData, f: &PLFunction) -> Result<Rat, Error> {
    check_slopes(model, f)?;
    let dec = linearity_domains(model, f)?;
    let polytope = &model.polytope;
    let ap_minus_q = fd.p.scale(&fd.a).sub(&fd.q);
    let facets = polytope.facets();

    let mut total = Rat::zero();
    for (j, region) in &dec.regions {
        let piece = &dec.pieces[*j];
        let affine = Poly::affine(&piece.c, &neg_vec(&piece.v));
        // Interior term.
        total -= integrate_polynomial(&affine.mul(&ap_minus_q), region)?;
        // Boundary term, restricted to this region.
        let extras = region_inequalities(&dec.pieces, *j);
        let integrand = affine.mul(&fd.p);
        for facet in &facets {
            total += facet_region_integral(polytope, facet, &integrand, &extras)?;
        }
    }
    Ok(total)
}
