//! Rank-one criterion: with ell a generator of the valuation cone,
//! existence holds iff L(ell) >= 0, with equality exactly in the
//! horospherical case. Both rays are checked when the cone is a line, since
//! L must then vanish on both (a nonzero value is a Futaki obstruction).

use num::{Signed, Zero};

use crate::criteria::{Existence, Verdict, Witness};
use crate::error::Error;
use crate::functional::{eval_l, FunctionalData, PLFunction};
use crate::model::NormalizedModel;
use crate::rational::{neg_vec, rat_i64, rat_str, vec_str, QVec, Rat};

pub fn check_rank_one(model: &NormalizedModel) -> Result<Verdict, Error> {
    if model.rank != 1 {
        return Err(Error::Invalid("the rank-one criterion needs a rank-one model".into()));
    }
    let fd = FunctionalData::build(model)?;
    let horospherical = model.is_horospherical();

    // Primitive slopes to test: generators of the valuation cone, both signs
    // of the lineality direction when the cone is the whole line.
    let slopes: Vec<QVec> = if horospherical {
        let l = model
            .valuation_cone
            .lineality
            .first()
            .cloned()
            .unwrap_or_else(|| vec![rat_i64(1)]);
        vec![l.clone(), neg_vec(&l)]
    } else {
        let gens = model.valuation_cone.generators.clone();
        if gens.is_empty() {
            return Err(Error::Invalid("valuation cone of a rank-one model must contain a ray".into()));
        }
        gens
    };

    let mut diagnostics = vec![
        ("a".into(), rat_str(&fd.a)),
        ("horospherical".into(), horospherical.to_string()),
    ];
    let mut values: Vec<(PLFunction, Rat)> = Vec::new();
    for s in &slopes {
        let f = PLFunction::affine(rat_i64(0), s.clone());
        let value = eval_l(model, &fd, &f)?;
        diagnostics.push((format!("L(slope {:?})", vec_str(s)), rat_str(&value)));
        values.push((f, value));
    }

    if horospherical {
        // L must vanish on the whole lineality; a nonzero value obstructs.
        if let Some((f, value)) = values.iter().find(|(_, v)| v.is_negative()) {
            return Ok(Verdict {
                outcome: Existence::NotExists,
                method: "rank-one".into(),
                witness: Some(Witness { f: f.clone(), value: value.clone() }),
                diagnostics,
            });
        }
        return Ok(Verdict {
            outcome: Existence::Exists,
            method: "rank-one".into(),
            witness: None,
            diagnostics,
        });
    }

    let (f, value) = values.into_iter().next().unwrap();
    if value.is_positive() {
        Ok(Verdict {
            outcome: Existence::Exists,
            method: "rank-one".into(),
            witness: None,
            diagnostics,
        })
    } else {
        if value.is_zero() {
            diagnostics.push((
                "note".into(),
                "L vanishes on the generator but the model is not horospherical".into(),
            ));
        }
        Ok(Verdict {
            outcome: Existence::NotExists,
            method: "rank-one".into(),
            witness: Some(Witness { f, value }),
            diagnostics,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{normalize, parse_spherical_data};

    fn segment_model(lo: i64, hi: i64, lineality: bool) -> NormalizedModel {
        let cone = if lineality {
            serde_json::json!({"generators": [], "lineality": [["1"]]})
        } else {
            serde_json::json!({"generators": [["-1"]], "lineality": []})
        };
        let doc = serde_json::json!({
            "ambient_dim": 1,
            "gram": [["1"]],
            "positive_roots": [],
            "lattice_basis": [["1"]],
            "chi": ["0"],
            "polytope": {"inequalities": [
                {"normal": ["-1"], "bound": (-lo).to_string()},
                {"normal": ["1"], "bound": hi.to_string()},
            ]},
            "valuation_cone": cone,
        })
        .to_string();
        normalize(&parse_spherical_data(&doc).unwrap()).unwrap()
    }

    /// Rank-one model with one root: gram [[1/2]], alpha = 2, so P(q) = q,
    /// Q = 1 on the segment [n, n+m].
    fn sl2_model(n: i64, m: i64, lineality: bool) -> NormalizedModel {
        let cone = if lineality {
            serde_json::json!({"generators": [], "lineality": [["1"]]})
        } else {
            serde_json::json!({"generators": [["-1"]], "lineality": []})
        };
        let doc = serde_json::json!({
            "ambient_dim": 1,
            "gram": [["1/2"]],
            "positive_roots": [["2"]],
            "lattice_basis": [["1"]],
            "chi": ["0"],
            "polytope": {"inequalities": [
                {"normal": ["-1"], "bound": (-n).to_string()},
                {"normal": ["1"], "bound": (n + m).to_string()},
            ]},
            "valuation_cone": cone,
        })
        .to_string();
        normalize(&parse_spherical_data(&doc).unwrap()).unwrap()
    }

    #[test]
    fn symmetric_segment_exists() {
        // P^1 as a horospherical segment: L vanishes on both slopes.
        let v = check_rank_one(&segment_model(-1, 1, true)).unwrap();
        assert_eq!(v.outcome, Existence::Exists);
    }

    #[test]
    fn toric_segment_futaki_always_vanishes() {
        // Any 1-dimensional toric polytope is a P^1; L is zero on affine
        // functions whatever the segment: lo + hi - (2/(hi-lo)) int q = 0.
        let v = check_rank_one(&segment_model(0, 3, true)).unwrap();
        assert_eq!(v.outcome, Existence::Exists);
    }

    #[test]
    fn horospherical_with_root_fails() {
        // a = 8/3 on [1,2] with P = q, Q = 1; L(-q) = -5/18 obstructs.
        let v = check_rank_one(&sl2_model(1, 1, true)).unwrap();
        assert_eq!(v.outcome, Existence::NotExists);
        let w = v.witness.unwrap();
        assert_eq!(w.value, crate::rational::rat_frac(-5, 18));
    }

    #[test]
    fn strict_half_line_positive() {
        // Same data but valuation cone {v <= 0}: the admissible slope is -1,
        // f(q) = q, and L(q) = +5/18 > 0.
        let v = check_rank_one(&sl2_model(1, 1, false)).unwrap();
        assert_eq!(v.outcome, Existence::Exists);
        assert_eq!(v.diagnostic("L(slope [\"-1\"])"), Some("5/18"));
    }

    #[test]
    fn wrong_rank_rejected() {
        let doc = serde_json::json!({
            "ambient_dim": 2,
            "gram": [["1","0"],["0","1"]],
            "positive_roots": [],
            "lattice_basis": [["1","0"],["0","1"]],
            "chi": ["0","0"],
            "polytope": {"inequalities": [
                {"normal": ["-1","0"], "bound": "0"}, {"normal": ["0","-1"], "bound": "0"},
                {"normal": ["1","0"], "bound": "1"}, {"normal": ["0","1"], "bound": "1"},
            ]},
            "valuation_cone": {"generators": [], "lineality": [["1","0"],["0","1"]]},
        })
        .to_string();
        let m = normalize(&parse_spherical_data(&doc).unwrap()).unwrap();
        assert!(check_rank_one(&m).is_err());
    }
}
