//! Exact integration of polynomials over polytopes and their facets.
//!
//! Interior integrals triangulate and use the closed-form integral of
//! monomials in barycentric coordinates; facet integrals use the
//! lattice-adapted facet charts so the induced lattice has covolume one.
//! In dimension one the facet measure degenerates to counting measure with
//! weight one per endpoint.

use num::{BigInt, Zero};

use crate::error::Error;
use crate::geometry::polytope::{factorial, RationalPolytope, Simplex, TriangulationBase};
use crate::polynomial::Poly;
use crate::rational::{dot, sub_vec, QMat, QVec, Rat};

/// Integral of a monomial prod t_i^{a_i} over the standard simplex
/// {t_i >= 0, sum t_i <= 1}: prod a_i! * r! / (sum a_i + r)! divided by r!.
fn monomial_simplex_integral(exps: &[u32]) -> Rat {
    let r = exps.len();
    let total: u32 = exps.iter().sum();
    let mut num = BigInt::from(1);
    for &a in exps {
        num *= factorial(a as usize);
    }
    let den = factorial(total as usize + r);
    Rat::new(num, den)
}

pub fn integrate_over_simplex(poly: &Poly, simplex: &Simplex) -> Rat {
    let base = &simplex.vertices[0];
    let dirs: Vec<QVec> = simplex.vertices[1..]
        .iter()
        .map(|v| sub_vec(v, base))
        .collect();
    let jac = QMat::from_rows(dirs.clone()).det();
    if jac.is_zero() {
        return Rat::zero();
    }
    let pulled = poly.pull_back(base, &dirs);
    let mut total = Rat::zero();
    for (e, c) in &pulled.terms {
        total += c * monomial_simplex_integral(e);
    }
    total * num::Signed::abs(&jac)
}

/// Exact integral of `poly` against the lattice-normalized volume.
pub fn integrate_polynomial(poly: &Poly, polytope: &RationalPolytope) -> Result<Rat, Error> {
    integrate_polynomial_via(poly, polytope, TriangulationBase::First)
}

pub fn integrate_polynomial_via(
    poly: &Poly,
    polytope: &RationalPolytope,
    base: TriangulationBase,
) -> Result<Rat, Error> {
    let mut total = Rat::zero();
    for s in polytope.triangulate_from(base)? {
        total += integrate_over_simplex(poly, &s);
    }
    Ok(total)
}

/// Integral of `poly` over one facet, restricted by extra inequalities,
/// against the lattice-normalized facet measure. Returns zero when the
/// restricted region is empty or lower-dimensional.
pub fn facet_region_integral(
    polytope: &RationalPolytope,
    facet: &crate::geometry::polytope::Facet,
    poly: &Poly,
    extra: &[(QVec, Rat)],
) -> Result<Rat, Error> {
    if polytope.dim == 1 {
        // 0-dimensional facet: counting measure, weight 1 per endpoint.
        let q = &facet.vertices[0];
        let ok = extra.iter().all(|(n, b)| dot(n, q) <= *b);
        return Ok(if ok { poly.eval(q) } else { Rat::zero() });
    }
    let chart = RationalPolytope::facet_chart(facet)?;
    let sub = match polytope.facet_subpolytope(&chart, extra) {
        Ok(p) => p,
        Err(Error::EmptyPolytope) => return Ok(Rat::zero()),
        Err(e) => return Err(e),
    };
    if !sub.is_full_dimensional() {
        return Ok(Rat::zero());
    }
    let pulled = chart.pull_back_poly(poly);
    integrate_polynomial(&pulled, &sub)
}

/// Sum over all facets of the facet integrals of `poly`.
pub fn integrate_polynomial_boundary(
    poly: &Poly,
    polytope: &RationalPolytope,
) -> Result<Rat, Error> {
    if !polytope.is_full_dimensional() {
        return Err(Error::Degenerate);
    }
    let mut total = Rat::zero();
    for facet in polytope.facets() {
        total += facet_region_integral(polytope, &facet, poly, &[])?;
    }
    Ok(total)
}
