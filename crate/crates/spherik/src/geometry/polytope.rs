//! Bounded rational polytopes in H-representation, with exact vertex
//! enumeration, facet charts and triangulation.

use num::{Signed, Zero};

use crate::error::Error;
use crate::geometry::cone::dual_by_double_description;
use crate::geometry::hermite::hermite_extend;
use crate::polynomial::Poly;
use crate::rational::{
    affine_dim, dot, neg_vec, primitive_direction, sub_vec, QMat, QVec, Rat,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    /// Primitive integer normal u; the inequality is <u, q> <= bound.
    pub normal: QVec,
    pub bound: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub dim: usize,
    pub inequalities: Vec<Halfspace>,
    vertices: Vec<QVec>,
}

/// A simplex given by dim+1 affinely independent vertices.
#[derive(Clone, Debug)]
pub struct Simplex {
    pub vertices: Vec<QVec>,
}

impl Simplex {
    pub fn volume(&self) -> Rat {
        let dim = self.vertices.len() - 1;
        let rows: Vec<QVec> = self.vertices[1..]
            .iter()
            .map(|v| sub_vec(v, &self.vertices[0]))
            .collect();
        let det = QMat::from_rows(rows).det().abs();
        det / Rat::from_integer(factorial(dim))
    }
}

pub(crate) fn factorial(n: usize) -> num::BigInt {
    let mut f = num::BigInt::from(1);
    for k in 2..=n {
        f *= num::BigInt::from(k);
    }
    f
}

impl RationalPolytope {
    /// Builds a polytope from inequalities <normal, q> <= bound. Normals are
    /// canonicalized to primitive integer vectors. Empty and unbounded
    /// regions are reported as distinct errors.
    pub fn from_inequalities(dim: usize, raw: Vec<(QVec, Rat)>) -> Result<Self, Error> {
        assert!(dim >= 1);
        let mut ineqs: Vec<Halfspace> = Vec::new();
        for (normal, bound) in raw {
            assert_eq!(normal.len(), dim, "normal has wrong dimension");
            match primitive_direction(&normal) {
                None => {
                    // 0 <= bound: trivially true or infeasible.
                    if bound.is_negative() {
                        return Err(Error::EmptyPolytope);
                    }
                }
                Some(prim) => {
                    // normal = s * prim with s > 0; rescale the bound.
                    let i = prim.iter().position(|x| !x.is_zero()).unwrap();
                    let s = &normal[i] / &prim[i];
                    let scaled = bound / s;
                    match ineqs.iter_mut().find(|h| h.normal == prim) {
                        Some(h) => {
                            if scaled < h.bound {
                                h.bound = scaled;
                            }
                        }
                        None => ineqs.push(Halfspace { normal: prim, bound: scaled }),
                    }
                }
            }
        }
        // Bounded iff the recession cone {d : <u_i, d> <= 0} is trivial.
        let rec_constraints: Vec<QVec> = ineqs.iter().map(|h| neg_vec(&h.normal)).collect();
        let rec = dual_by_double_description(dim, &rec_constraints);
        if !rec.is_zero_cone() {
            return Err(Error::UnboundedPolytope);
        }
        let vertices = enumerate_vertices(dim, &ineqs);
        if vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        Ok(RationalPolytope { dim, inequalities: ineqs, vertices })
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn contains(&self, q: &[Rat]) -> bool {
        self.inequalities.iter().all(|h| dot(&h.normal, q) <= h.bound)
    }

    pub fn is_full_dimensional(&self) -> bool {
        affine_dim(&self.vertices) == self.dim
    }

    /// Facet-defining inequalities with their tight vertex sets.
    pub fn facets(&self) -> Vec<Facet> {
        let mut out = Vec::new();
        for h in &self.inequalities {
            let tight: Vec<QVec> = self
                .vertices
                .iter()
                .filter(|v| dot(&h.normal, v) == h.bound)
                .cloned()
                .collect();
            if !tight.is_empty() && affine_dim(&tight) + 1 == self.dim {
                out.push(Facet { normal: h.normal.clone(), bound: h.bound.clone(), vertices: tight });
            }
        }
        out
    }

    /// Lattice-adapted coordinates on a facet hyperplane: q = base + D w with
    /// the columns of D a basis of the lattice directions inside the facet.
    pub fn facet_chart(facet: &Facet) -> Result<FacetChart, Error> {
        let u = hermite_extend(&facet.normal)?;
        let w = u.inverse().expect("unimodular");
        let dim = facet.normal.len();
        let base: QVec = (0..dim).map(|i| &w[(i, 0)] * &facet.bound).collect();
        let dirs: Vec<QVec> = (1..dim).map(|j| w.col(j)).collect();
        Ok(FacetChart { base, dirs })
    }

    /// The polytope obtained by restricting this polytope (plus extra
    /// inequalities) to a facet, in the facet chart coordinates.
    pub fn facet_subpolytope(
        &self,
        chart: &FacetChart,
        extra: &[(QVec, Rat)],
    ) -> Result<RationalPolytope, Error> {
        let sub_dim = self.dim - 1;
        let mut raw = Vec::new();
        for h in &self.inequalities {
            raw.push(chart.pull_back_halfspace(&h.normal, &h.bound));
        }
        for (n, b) in extra {
            raw.push(chart.pull_back_halfspace(n, b));
        }
        RationalPolytope::from_inequalities(sub_dim, raw)
    }

    pub fn triangulate(&self) -> Result<Vec<Simplex>, Error> {
        self.triangulate_from(TriangulationBase::First)
    }

    /// Fan triangulation from a base vertex; the choice only matters for the
    /// triangulation-independence tests.
    pub fn triangulate_from(&self, base: TriangulationBase) -> Result<Vec<Simplex>, Error> {
        if !self.is_full_dimensional() {
            return Err(Error::Degenerate);
        }
        if self.dim == 1 {
            let lo = self.vertices.first().unwrap().clone();
            let hi = self.vertices.last().unwrap().clone();
            return Ok(vec![Simplex { vertices: vec![lo, hi] }]);
        }
        let base_vertex = match base {
            TriangulationBase::First => self.vertices.first().unwrap().clone(),
            TriangulationBase::Last => self.vertices.last().unwrap().clone(),
        };
        let mut simplices = Vec::new();
        for facet in self.facets() {
            if dot(&facet.normal, &base_vertex) == facet.bound {
                continue; // facet contains the apex
            }
            let chart = Self::facet_chart(&facet)?;
            let sub = self.facet_subpolytope(&chart, &[])?;
            for s in sub.triangulate_from(base)? {
                let mut verts = vec![base_vertex.clone()];
                verts.extend(s.vertices.iter().map(|w| chart.push_forward(w)));
                let simplex = Simplex { vertices: verts };
                if !simplex.volume().is_zero() {
                    simplices.push(simplex);
                }
            }
        }
        Ok(simplices)
    }

    pub fn volume(&self) -> Result<Rat, Error> {
        Ok(self.triangulate()?.iter().map(|s| s.volume()).sum())
    }
}

#[derive(Clone, Copy, Debug)]
pub enum TriangulationBase {
    First,
    Last,
}

#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: QVec,
    pub bound: Rat,
    pub vertices: Vec<QVec>,
}

#[derive(Clone, Debug)]
pub struct FacetChart {
    pub base: QVec,
    pub dirs: Vec<QVec>,
}

impl FacetChart {
    pub fn push_forward(&self, w: &[Rat]) -> QVec {
        let mut q = self.base.clone();
        for (wi, d) in w.iter().zip(&self.dirs) {
            for (qj, dj) in q.iter_mut().zip(d) {
                *qj += wi * dj;
            }
        }
        q
    }

    pub fn pull_back_halfspace(&self, normal: &[Rat], bound: &Rat) -> (QVec, Rat) {
        let lin: QVec = self.dirs.iter().map(|d| dot(normal, d)).collect();
        (lin, bound - dot(normal, &self.base))
    }

    pub fn pull_back_poly(&self, poly: &Poly) -> Poly {
        poly.pull_back(&self.base, &self.dirs)
    }
}

fn enumerate_vertices(dim: usize, ineqs: &[Halfspace]) -> Vec<QVec> {
    let n = ineqs.len();
    let mut vertices: Vec<QVec> = Vec::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    if n < dim {
        return vertices;
    }
    loop {
        let rows: Vec<QVec> = idx.iter().map(|&i| ineqs[i].normal.clone()).collect();
        let m = QMat::from_rows(rows);
        if !m.det().is_zero() {
            let b: QVec = idx.iter().map(|&i| ineqs[i].bound.clone()).collect();
            let q = m.solve(&b).expect("nonsingular system");
            if ineqs.iter().all(|h| dot(&h.normal, &q) <= h.bound) {
                vertices.push(q);
            }
        }
        // next combination
        let mut k = dim;
        loop {
            if k == 0 {
                vertices.sort();
                vertices.dedup();
                return vertices;
            }
            k -= 1;
            if idx[k] + (dim - k) < n {
                idx[k] += 1;
                for j in k + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
