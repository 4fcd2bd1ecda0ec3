//! Combinatorial data of a polarized spherical variety: ingestion,
//! validation, and normalization into lattice coordinates.
//!
//! The pairing is supplied as an explicit Gram matrix, so no Lie-theory
//! tables are needed; `root_systems` provides small generators for building
//! fixtures.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{PolyhedralCone, RationalPolytope};
use crate::rational::{
    add_vec, dot, parse_rat, parse_vec, rat_frac, scale_vec, zeros, QMat, QVec, Rat,
};

/// Raw combinatorial input, in ambient weight-space coordinates.
#[derive(Clone, Debug)]
pub struct SphericalData {
    pub ambient_dim: usize,
    /// Symmetric positive semidefinite pairing on the ambient weight space.
    pub gram: QMat,
    pub positive_roots: Vec<QVec>,
    /// d x r matrix whose columns span the weight lattice M.
    pub lattice_basis: QMat,
    /// Base point in the affine span of the moment polytope.
    pub chi: QVec,
    /// Inequalities <u, p> <= c cutting the moment polytope inside
    /// chi + M (x) R.
    pub polytope_ambient: Vec<(QVec, Rat)>,
    /// Valuation cone in coordinates dual to the lattice basis.
    pub valuation_cone: PolyhedralCone,
    /// Declares the polytope to be the anticanonical moment polytope.
    pub is_fano_anticanonical: bool,
}

/// The same data pulled back to lattice coordinates q, where the measure is
/// the standard volume: p = chi + sum q_i e_i.
#[derive(Clone, Debug)]
pub struct NormalizedModel {
    pub rank: usize,
    pub ambient_dim: usize,
    pub polytope: RationalPolytope,
    /// For each positive root, the affine form q -> kappa(alpha, chi + E q).
    pub roots_affine: Vec<(Rat, QVec)>,
    /// Indices into positive_roots of the active roots.
    pub active_roots: Vec<usize>,
    /// Half-sum of all positive roots, ambient coordinates.
    pub varpi: QVec,
    /// Sum of the active roots, ambient coordinates.
    pub two_varpi_x: QVec,
    pub valuation_cone: PolyhedralCone,
    /// Cached dual of the valuation cone (membership tests).
    pub valuation_cone_dual: PolyhedralCone,
    pub gram: QMat,
    pub positive_roots: Vec<QVec>,
    pub lattice_basis: QMat,
    pub chi: QVec,
    pub is_fano_anticanonical: bool,
}

pub fn kappa(gram: &QMat, a: &[Rat], b: &[Rat]) -> Rat {
    dot(&gram.mul_vec(b), a)
}

// ---------------------------------------------------------------------------
// JSON schema

#[derive(Serialize, Deserialize)]
struct RawModel {
    ambient_dim: usize,
    gram: Vec<Vec<String>>,
    positive_roots: Vec<Vec<String>>,
    lattice_basis: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chi: Option<Vec<String>>,
    polytope: RawPolytope,
    valuation_cone: RawCone,
    #[serde(default)]
    fano: bool,
}

#[derive(Serialize, Deserialize)]
struct RawPolytope {
    inequalities: Vec<RawIneq>,
}

#[derive(Serialize, Deserialize)]
struct RawIneq {
    normal: Vec<String>,
    bound: String,
}

#[derive(Serialize, Deserialize)]
struct RawCone {
    #[serde(default)]
    generators: Vec<Vec<String>>,
    #[serde(default)]
    lineality: Vec<Vec<String>>,
}

/// Parses and validates a spherical-data document.
pub fn parse_spherical_data(document: &str) -> Result<SphericalData, Error> {
    let raw: RawModel = serde_json::from_str(document)?;
    let d = raw.ambient_dim;
    if raw.gram.len() != d || raw.gram.iter().any(|row| row.len() != d) {
        return Err(Error::Invalid(format!("gram must be {d}x{d}")));
    }
    let gram_rows: Vec<QVec> = raw
        .gram
        .iter()
        .map(|row| parse_vec(row))
        .collect::<Result<_, _>>()?;
    let gram = QMat::from_rows(gram_rows);
    let positive_roots: Vec<QVec> = raw
        .positive_roots
        .iter()
        .map(|v| parse_vec(v))
        .collect::<Result<_, _>>()?;
    let basis_cols: Vec<QVec> = raw
        .lattice_basis
        .iter()
        .map(|v| parse_vec(v))
        .collect::<Result<_, _>>()?;
    if basis_cols.is_empty() || basis_cols.iter().any(|c| c.len() != d) {
        return Err(Error::Invalid("lattice_basis columns must have length ambient_dim".into()));
    }
    let r = basis_cols.len();
    let lattice_basis = QMat::from_cols(basis_cols);
    let mut polytope_ambient = Vec::new();
    for iq in &raw.polytope.inequalities {
        let n = parse_vec(&iq.normal)?;
        if n.len() != d {
            return Err(Error::Invalid("polytope normal has wrong dimension".into()));
        }
        polytope_ambient.push((n, parse_rat(&iq.bound)?));
    }
    let gens: Vec<QVec> = raw
        .valuation_cone
        .generators
        .iter()
        .map(|v| parse_vec(v))
        .collect::<Result<_, _>>()?;
    let lin: Vec<QVec> = raw
        .valuation_cone
        .lineality
        .iter()
        .map(|v| parse_vec(v))
        .collect::<Result<_, _>>()?;
    if gens.iter().chain(lin.iter()).any(|v| v.len() != r) {
        return Err(Error::Invalid("valuation cone vectors must have length rank".into()));
    }
    let valuation_cone = PolyhedralCone::new(r, gens, lin);

    let chi = match raw.chi {
        Some(c) => {
            let chi = parse_vec(&c)?;
            if chi.len() != d {
                return Err(Error::Invalid("chi has wrong dimension".into()));
            }
            chi
        }
        None => default_chi(d, r, &polytope_ambient)?,
    };

    let data = SphericalData {
        ambient_dim: d,
        gram,
        positive_roots,
        lattice_basis,
        chi,
        polytope_ambient,
        valuation_cone,
        is_fano_anticanonical: raw.fano,
    };
    validate(&data)?;
    Ok(data)
}

pub fn load_spherical_data(path: &std::path::Path) -> Result<SphericalData, Error> {
    parse_spherical_data(&std::fs::read_to_string(path)?)
}

/// When chi is omitted the lexicographically smallest vertex of the ambient
/// polytope is used; this requires the lattice to span the ambient space.
fn default_chi(d: usize, r: usize, ineqs: &[(QVec, Rat)]) -> Result<QVec, Error> {
    if d != r {
        return Err(Error::Invalid(
            "chi is required when the lattice rank is smaller than the ambient dimension".into(),
        ));
    }
    let p = RationalPolytope::from_inequalities(d, ineqs.to_vec())?;
    Ok(p.vertices().first().unwrap().clone())
}

fn validate(data: &SphericalData) -> Result<(), Error> {
    let d = data.ambient_dim;
    // Symmetry and positive semidefiniteness of the pairing.
    for i in 0..d {
        for j in 0..i {
            if data.gram[(i, j)] != data.gram[(j, i)] {
                return Err(Error::Invalid("gram matrix is not symmetric".into()));
            }
        }
    }
    if !is_psd(&data.gram) {
        return Err(Error::Invalid("gram matrix is not positive semidefinite".into()));
    }
    for (k, alpha) in data.positive_roots.iter().enumerate() {
        if alpha.len() != d {
            return Err(Error::Invalid(format!("root {k} has wrong dimension")));
        }
        if !kappa(&data.gram, alpha, alpha).is_positive() {
            return Err(Error::Invalid(format!("root {k} has kappa(alpha, alpha) <= 0")));
        }
    }
    if data.lattice_basis.rank() != data.lattice_basis.cols {
        return Err(Error::Invalid("lattice basis columns are linearly dependent".into()));
    }
    // The remaining invariants (polytope nonempty, bounded, full-dimensional
    // in the lattice directions, dominant) are checked by normalization.
    normalize(data).map(|_| ())
}

/// Checks positive semidefiniteness exactly via all principal minors.
fn is_psd(g: &QMat) -> bool {
    let n = g.rows;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let mut sub = QMat::new(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                sub[(a, b)] = g[(i, j)].clone();
            }
        }
        if sub.det().is_negative() {
            return false;
        }
    }
    true
}

/// Pulls the data back to lattice coordinates where the measure is the
/// standard volume, and computes the derived root quantities.
pub fn normalize(data: &SphericalData) -> Result<NormalizedModel, Error> {
    let d = data.ambient_dim;
    let r = data.lattice_basis.cols;
    let basis_cols: Vec<QVec> = (0..r).map(|j| data.lattice_basis.col(j)).collect();

    let mut raw_ineqs = Vec::new();
    for (u, c) in &data.polytope_ambient {
        let lin: QVec = basis_cols.iter().map(|e| dot(u, e)).collect();
        raw_ineqs.push((lin, c - dot(u, &data.chi)));
    }
    let polytope = RationalPolytope::from_inequalities(r, raw_ineqs)?;
    if !polytope.is_full_dimensional() {
        return Err(Error::Degenerate);
    }

    let mut roots_affine = Vec::new();
    for alpha in &data.positive_roots {
        let c0 = kappa(&data.gram, alpha, &data.chi);
        let lin: QVec = basis_cols.iter().map(|e| kappa(&data.gram, alpha, e)).collect();
        roots_affine.push((c0, lin));
    }
    // Dominance is checked at vertices; sufficient by convexity.
    for (k, (c0, lin)) in roots_affine.iter().enumerate() {
        for v in polytope.vertices() {
            if (c0 + dot(lin, v)).is_negative() {
                return Err(Error::Invalid(format!(
                    "moment polytope leaves the dominant chamber: root {k} negative at a vertex"
                )));
            }
        }
    }

    let active_roots: Vec<usize> = roots_affine
        .iter()
        .enumerate()
        .filter(|(_, (c0, lin))| {
            polytope.vertices().iter().any(|v| !(c0 + dot(lin, v)).is_zero())
        })
        .map(|(k, _)| k)
        .collect();

    let mut varpi = zeros(d);
    for alpha in &data.positive_roots {
        varpi = add_vec(&varpi, alpha);
    }
    varpi = scale_vec(&rat_frac(1, 2), &varpi);
    let mut two_varpi_x = zeros(d);
    for &k in &active_roots {
        two_varpi_x = add_vec(&two_varpi_x, &data.positive_roots[k]);
    }

    let valuation_cone_dual = data.valuation_cone.dual();
    Ok(NormalizedModel {
        rank: r,
        ambient_dim: d,
        polytope,
        roots_affine,
        active_roots,
        varpi,
        two_varpi_x,
        valuation_cone: data.valuation_cone.clone(),
        valuation_cone_dual,
        gram: data.gram.clone(),
        positive_roots: data.positive_roots.clone(),
        lattice_basis: data.lattice_basis.clone(),
        chi: data.chi.clone(),
        is_fano_anticanonical: data.is_fano_anticanonical,
    })
}

impl NormalizedModel {
    pub fn is_toric(&self) -> bool {
        self.positive_roots.is_empty()
    }

    /// Horospherical iff the valuation cone is the whole space.
    pub fn is_horospherical(&self) -> bool {
        self.valuation_cone.lineality_dim() == self.rank
    }

    /// Maps lattice coordinates to the ambient weight space.
    pub fn to_ambient(&self, q: &[Rat]) -> QVec {
        add_vec(&self.chi, &self.lattice_basis.mul_vec(q))
    }
}

/// Gram matrices and positive roots of the rank <= 2 irreducible root
/// systems, in rational coordinates; convenience for building fixtures.
pub mod root_systems {
    use super::*;
    use crate::rational::{rat_frac, rat_i64};

    fn v(xs: &[i64]) -> QVec {
        xs.iter().map(|&x| rat_i64(x)).collect()
    }

    /// A1 in fundamental-weight coordinates: alpha = 2*varpi.
    pub fn a1() -> (QMat, Vec<QVec>) {
        (QMat::from_rows(vec![vec![rat_frac(1, 2)]]), vec![v(&[2])])
    }

    /// A2 in fundamental-weight coordinates.
    pub fn a2() -> (QMat, Vec<QVec>) {
        let gram = QMat::from_rows(vec![
            vec![rat_frac(2, 3), rat_frac(1, 3)],
            vec![rat_frac(1, 3), rat_frac(2, 3)],
        ]);
        (gram, vec![v(&[2, -1]), v(&[-1, 2]), v(&[1, 1])])
    }

    /// B2 in Euclidean coordinates.
    pub fn b2() -> (QMat, Vec<QVec>) {
        (QMat::identity(2), vec![v(&[1, -1]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])])
    }

    /// G2 in simple-root coordinates.
    pub fn g2() -> (QMat, Vec<QVec>) {
        let gram = QMat::from_rows(vec![
            vec![rat_i64(2), rat_i64(-3)],
            vec![rat_i64(-3), rat_i64(6)],
        ]);
        (
            gram,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[2, 1]), v(&[3, 1]), v(&[3, 2])],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_i64, sub_vec};

    fn toric_square_doc() -> String {
        serde_json::json!({
            "ambient_dim": 2,
            "gram": [["1","0"],["0","1"]],
            "positive_roots": [],
            "lattice_basis": [["1","0"],["0","1"]],
            "chi": ["0","0"],
            "polytope": {"inequalities": [
                {"normal": ["-1","0"], "bound": "0"},
                {"normal": ["0","-1"], "bound": "0"},
                {"normal": ["1","0"], "bound": "1"},
                {"normal": ["0","1"], "bound": "1"}
            ]},
            "valuation_cone": {"generators": [], "lineality": [["1","0"],["0","1"]]}
        })
        .to_string()
    }

    fn rank_one_doc() -> String {
        serde_json::json!({
            "ambient_dim": 1,
            "gram": [["1/2"]],
            "positive_roots": [["2"]],
            "lattice_basis": [["1"]],
            "chi": ["1"],
            "polytope": {"inequalities": [
                {"normal": ["-1"], "bound": "-1"},
                {"normal": ["1"], "bound": "2"}
            ]},
            "valuation_cone": {"generators": [], "lineality": [["1"]]}
        })
        .to_string()
    }

    #[test]
    fn parses_toric_data() {
        let data = parse_spherical_data(&toric_square_doc()).unwrap();
        let model = normalize(&data).unwrap();
        assert_eq!(model.rank, 2);
        assert!(model.is_toric());
        assert!(model.is_horospherical());
        assert!(model.active_roots.is_empty());
    }

    #[test]
    fn rank_one_model() {
        let data = parse_spherical_data(&rank_one_doc()).unwrap();
        let model = normalize(&data).unwrap();
        assert_eq!(model.rank, 1);
        assert_eq!(model.active_roots, vec![0]);
        assert!(model.is_horospherical());
        // Affine root form in q-coordinates: kappa(alpha, 1 + q) = 1 + q.
        assert_eq!(model.roots_affine[0].0, rat_i64(1));
        assert_eq!(model.roots_affine[0].1, vec![rat_i64(1)]);
        assert_eq!(model.two_varpi_x, vec![rat_i64(2)]);
    }

    #[test]
    fn dominance_violation_rejected() {
        // Same rank-one data but with a polytope crossing the wall.
        let doc = rank_one_doc().replace("\"-1\"", "\"1\"").replacen("-1", "-3", 1);
        // Simpler: build a document with polytope [-1, 2].
        let doc2 = serde_json::json!({
            "ambient_dim": 1,
            "gram": [["1/2"]],
            "positive_roots": [["2"]],
            "lattice_basis": [["1"]],
            "chi": ["0"],
            "polytope": {"inequalities": [
                {"normal": ["-1"], "bound": "1"},
                {"normal": ["1"], "bound": "2"}
            ]},
            "valuation_cone": {"generators": [], "lineality": [["1"]]}
        })
        .to_string();
        let _ = doc;
        assert!(matches!(parse_spherical_data(&doc2), Err(Error::Invalid(_))));
    }

    #[test]
    fn root_on_wall_is_inactive() {
        // A2 with a polytope inside the wall kappa(alpha1, .) = 0.
        let doc = serde_json::json!({
            "ambient_dim": 2,
            "gram": [["2/3","1/3"],["1/3","2/3"]],
            "positive_roots": [["2","-1"],["-1","2"],["1","1"]],
            "lattice_basis": [["0","1"]],
            "chi": ["0","1"],
            "polytope": {"inequalities": [
                {"normal": ["0","-1"], "bound": "-1"},
                {"normal": ["0","1"], "bound": "3"}
            ]},
            "valuation_cone": {"generators": [["-1"]], "lineality": []}
        })
        .to_string();
        let data = parse_spherical_data(&doc).unwrap();
        let model = normalize(&data).unwrap();
        // kappa(alpha1, p) = 0 on the varpi2 axis, so alpha1 is inactive.
        assert_eq!(model.active_roots, vec![1, 2]);
        assert!(!model.is_horospherical());
    }

    #[test]
    fn default_chi_is_smallest_vertex() {
        let doc = toric_square_doc().replace("\"chi\":[\"0\",\"0\"],", "");
        let data = parse_spherical_data(&doc).unwrap();
        assert_eq!(data.chi, vec![rat_i64(0), rat_i64(0)]);
    }

    #[test]
    fn bad_gram_rejected() {
        let doc = toric_square_doc().replace("[\"1\",\"0\"],[\"0\",\"1\"]", "[\"1\",\"2\"],[\"0\",\"1\"]");
        assert!(parse_spherical_data(&doc).is_err());
    }

    #[test]
    fn root_system_helpers_are_consistent() {
        for (gram, roots) in [
            root_systems::a2(),
            root_systems::b2(),
            root_systems::g2(),
        ] {
            // varpi pairs positively with every positive root.
            let mut varpi = zeros(2);
            for a in &roots {
                varpi = add_vec(&varpi, a);
            }
            for a in &roots {
                assert!(kappa(&gram, a, a).is_positive());
                assert!(kappa(&gram, a, &varpi).is_positive());
            }
            let _ = sub_vec(&varpi, &varpi);
        }
    }
}
