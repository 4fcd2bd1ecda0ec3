//! Barycenter criterion for Kähler–Einstein metrics on spherical Fano
//! varieties: existence holds iff the barycenter of the anticanonical moment
//! polytope against P dmu lies in 2*varpi_X + relint((-V)^dual).
//!
//! The orientation of the dual cone is fixed so that for toric data, where
//! the valuation cone is everything and 2*varpi_X = 0, the condition reads
//! "barycenter = 0".

use num::{Signed, Zero};

use crate::criteria::{Existence, Verdict};
use crate::error::Error;
use crate::functional::{weighted_barycenter, FunctionalData};
use crate::geometry::PolyhedralCone;
use crate::model::NormalizedModel;
use crate::rational::{dot, rat_str, sub_vec, vec_str, Rat};

pub fn check_fano_ke(model: &NormalizedModel) -> Result<Verdict, Error> {
    if !model.is_fano_anticanonical {
        return Err(Error::Invalid(
            "the barycenter criterion needs a model flagged as anticanonically polarized Fano"
                .into(),
        ));
    }
    let fd = FunctionalData::build(model)?;
    let barycenter = weighted_barycenter(model, &fd)?;
    let shifted = sub_vec(&barycenter, &model.two_varpi_x);

    let mut diagnostics = vec![
        ("a".into(), rat_str(&fd.a)),
        ("barycenter".into(), format!("{:?}", vec_str(&barycenter))),
        ("two_varpi_x".into(), format!("{:?}", vec_str(&model.two_varpi_x))),
    ];

    // Express barycenter - 2*varpi_X in lattice coordinates; the dual of the
    // valuation cone lives there.
    let Some(t) = model.lattice_basis.solve(&shifted) else {
        diagnostics.push((
            "certificate".into(),
            "barycenter - 2*varpi_X does not lie in the span of the weight lattice".into(),
        ));
        return Ok(Verdict {
            outcome: Existence::NotExists,
            method: "fano-barycenter".into(),
            witness: None,
            diagnostics,
        });
    };
    diagnostics.push(("shifted_barycenter_lattice".into(), format!("{:?}", vec_str(&t))));

    let dual = model.valuation_cone.negated().dual();
    match relint_certificate(&dual, &t) {
        None => {
            diagnostics.push(("cone_membership".into(), "interior".into()));
            Ok(Verdict {
                outcome: Existence::Exists,
                method: "fano-barycenter".into(),
                witness: None,
                diagnostics,
            })
        }
        Some(cert) => {
            diagnostics.push(("certificate".into(), cert));
            Ok(Verdict {
                outcome: Existence::NotExists,
                method: "fano-barycenter".into(),
                witness: None,
                diagnostics,
            })
        }
    }
}

/// None when x is in the relative interior of the cone; otherwise a
/// human-readable violated supporting inequality.
fn relint_certificate(cone: &PolyhedralCone, x: &[Rat]) -> Option<String> {
    if !cone.span_contains(x) {
        return Some("point lies outside the linear span of the cone".into());
    }
    let dual = cone.dual();
    for l in &dual.lineality {
        if !dot(l, x).is_zero() {
            return Some(format!(
                "supporting equality <{:?}, x> = 0 violated",
                vec_str(l)
            ));
        }
    }
    for g in &dual.generators {
        let v = dot(g, x);
        let vanishes = cone.generators.iter().all(|c| dot(g, c).is_zero())
            && cone.lineality.iter().all(|c| dot(g, c).is_zero());
        if v.is_negative() || (v.is_zero() && !vanishes) {
            return Some(format!(
                "facet inequality <{:?}, x> > 0 fails (value {})",
                vec_str(g),
                rat_str(&v)
            ));
        }
    }
    None
}
