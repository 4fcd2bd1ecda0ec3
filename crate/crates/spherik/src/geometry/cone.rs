//! Polyhedral cones over the rationals and cone duality.
//!
//! Cones are given by generators plus lineality generators. Duality is
//! computed by a double description pass with an exact extremality prune,
//! with the convention dual(C) = {m : <m, x> >= 0 for all x in C}.

use num::{Signed, Zero};

use crate::rational::{
    dot, is_zero_vec, neg_vec, primitive_direction, rank_of_vectors, scale_vec, sub_vec, QMat,
    QVec, Rat,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCone {
    pub dim: usize,
    pub generators: Vec<QVec>,
    pub lineality: Vec<QVec>,
}

impl PolyhedralCone {
    pub fn new(dim: usize, generators: Vec<QVec>, lineality: Vec<QVec>) -> Self {
        let mut gens: Vec<QVec> = generators
            .iter()
            .filter_map(|g| primitive_direction(g))
            .collect();
        gens.sort();
        gens.dedup();
        let mut lin: Vec<QVec> = lineality
            .iter()
            .filter_map(|l| primitive_direction(l))
            .collect();
        lin.sort();
        lin.dedup();
        PolyhedralCone { dim, generators: gens, lineality: lin }
    }

    pub fn zero(dim: usize) -> Self {
        PolyhedralCone { dim, generators: vec![], lineality: vec![] }
    }

    pub fn full_space(dim: usize) -> Self {
        let basis = (0..dim).map(|i| QMat::identity(dim).row(i).to_vec()).collect();
        PolyhedralCone { dim, generators: vec![], lineality: basis }
    }

    pub fn is_zero_cone(&self) -> bool {
        self.generators.is_empty() && self.lineality.is_empty()
    }

    pub fn negated(&self) -> Self {
        PolyhedralCone {
            dim: self.dim,
            generators: self.generators.iter().map(|g| neg_vec(g)).collect(),
            lineality: self.lineality.clone(),
        }
    }

    /// dual(C) = {m : <m, x> >= 0 for all x in C}.
    pub fn dual(&self) -> PolyhedralCone {
        let mut constraints: Vec<QVec> = Vec::new();
        for g in &self.generators {
            constraints.push(g.clone());
        }
        for l in &self.lineality {
            constraints.push(l.clone());
            constraints.push(neg_vec(l));
        }
        dual_by_double_description(self.dim, &constraints)
    }

    /// Exact membership, via the dual H-representation.
    pub fn contains(&self, x: &[Rat]) -> bool {
        let d = self.dual();
        halfspace_rep_contains(&d, x)
    }

    /// Span of the cone (generators plus lineality) contains x.
    pub fn span_contains(&self, x: &[Rat]) -> bool {
        if is_zero_vec(x) {
            return true;
        }
        let mut vs: Vec<QVec> = self.generators.clone();
        vs.extend(self.lineality.clone());
        let base = rank_of_vectors(&vs);
        vs.push(x.to_vec());
        rank_of_vectors(&vs) == base
    }

    /// True iff x lies in the relative interior of the cone. For the zero
    /// cone this means x = 0.
    pub fn relint_contains(&self, x: &[Rat]) -> bool {
        if !self.span_contains(x) {
            return false;
        }
        let d = self.dual();
        for l in &d.lineality {
            if !dot(l, x).is_zero() {
                return false;
            }
        }
        for g in &d.generators {
            let v = dot(g, x);
            if v.is_negative() {
                return false;
            }
            // A dual generator not vanishing on span(C) supports a proper
            // face; interiority requires a strictly positive pairing.
            if v.is_zero() && !self.vanishes_on_span(g) {
                return false;
            }
        }
        true
    }

    fn vanishes_on_span(&self, m: &[Rat]) -> bool {
        self.generators.iter().all(|g| dot(m, g).is_zero())
            && self.lineality.iter().all(|l| dot(m, l).is_zero())
    }

    /// Dimension of the linear part C ∩ -C.
    pub fn lineality_dim(&self) -> usize {
        let d = self.dual();
        let mut rows: Vec<QVec> = d.generators.clone();
        rows.extend(d.lineality.clone());
        if rows.is_empty() {
            return self.dim;
        }
        self.dim - rank_of_vectors(&rows)
    }
}

pub(crate) fn halfspace_rep_contains(dual: &PolyhedralCone, x: &[Rat]) -> bool {
    dual.generators.iter().all(|g| !dot(g, x).is_negative())
        && dual.lineality.iter().all(|l| dot(l, x).is_zero())
}

/// Computes {m : <m, c> >= 0 for every c in constraints} as generators plus
/// lineality.
pub fn dual_by_double_description(dim: usize, constraints: &[QVec]) -> PolyhedralCone {
    let mut lin: Vec<QVec> = (0..dim)
        .map(|i| QMat::identity(dim).row(i).to_vec())
        .collect();
    let mut rays: Vec<QVec> = Vec::new();
    let mut processed: Vec<QVec> = Vec::new();

    for g in constraints {
        if is_zero_vec(g) {
            continue;
        }
        let transversal = lin.iter().position(|l| !dot(g, l).is_zero());
        match transversal {
            Some(idx) => {
                let mut pivot = lin.remove(idx);
                let mut pv = dot(g, &pivot);
                if pv.is_negative() {
                    pivot = neg_vec(&pivot);
                    pv = -pv;
                }
                for l in lin.iter_mut() {
                    let c = dot(g, l) / &pv;
                    *l = sub_vec(l, &scale_vec(&c, &pivot));
                }
                for r in rays.iter_mut() {
                    let c = dot(g, r) / &pv;
                    *r = sub_vec(r, &scale_vec(&c, &pivot));
                }
                rays.push(pivot);
            }
            None => {
                let mut pos = Vec::new();
                let mut zero = Vec::new();
                let mut neg = Vec::new();
                for r in rays.drain(..) {
                    let v = dot(g, &r);
                    if v.is_zero() {
                        zero.push(r);
                    } else if v.is_positive() {
                        pos.push((r, v));
                    } else {
                        neg.push((r, v));
                    }
                }
                let mut next: Vec<QVec> = zero;
                for (p, vp) in &pos {
                    for (n, vn) in &neg {
                        let combo = sub_vec(&scale_vec(vp, n), &scale_vec(vn, p));
                        if !is_zero_vec(&combo) {
                            next.push(combo);
                        }
                    }
                }
                next.extend(pos.into_iter().map(|(r, _)| r));
                rays = next;
            }
        }
        processed.push(g.clone());
        rays = prune_rays(dim, rays, &lin, &processed);
    }

    let mut cone = PolyhedralCone::new(dim, rays, lin);
    cone.dim = dim;
    cone
}

/// Keeps only extreme rays: a ray of a cone with lineality dimension L is
/// extreme iff the constraints tight at it have rank dim - L - 1.
fn prune_rays(dim: usize, rays: Vec<QVec>, lin: &[QVec], processed: &[QVec]) -> Vec<QVec> {
    let lin_dim = lin.len();
    let target = dim - lin_dim - 1;
    let mut kept: Vec<QVec> = Vec::new();
    for r in rays {
        let Some(prim) = primitive_direction(&r) else { continue };
        // Drop rays that fell into the lineality space.
        if lin_dim > 0 {
            let mut vs = lin.to_vec();
            vs.push(prim.clone());
            if rank_of_vectors(&vs) == lin_dim {
                continue;
            }
        }
        let tight: Vec<QVec> = processed
            .iter()
            .filter(|h| dot(h, &prim).is_zero())
            .cloned()
            .collect();
        if rank_of_vectors(&tight) == target {
            kept.push(prim);
        }
    }
    kept.sort();
    kept.dedup();
    kept
}
