//! The effective existence criteria, the destabilizer search harness, and
//! the Hilbert-series cross-check oracle.

pub mod fano;
pub mod hilbert;
pub mod rank_one;
pub mod search;
pub mod toric_surface;

use crate::error::Error;
use crate::functional::PLFunction;
use crate::model::NormalizedModel;
use crate::rational::Rat;

pub use fano::check_fano_ke;
pub use hilbert::{hilbert_series_oracle, HilbertFit};
pub use rank_one::check_rank_one;
pub use search::{search_destabilizer, SearchParams, SearchReport};
pub use toric_surface::check_toric_surface;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Existence {
    Exists,
    NotExists,
    Indeterminate,
}

impl Existence {
    pub fn as_str(&self) -> &'static str {
        match self {
            Existence::Exists => "EXISTS",
            Existence::NotExists => "NOT_EXISTS",
            Existence::Indeterminate => "INDETERMINATE",
        }
    }
}

/// A test function together with its exact L-value; for NOT_EXISTS verdicts
/// coming from a functional obstruction the value is negative, or nonzero
/// for an affine (Futaki-type) obstruction.
#[derive(Clone, Debug)]
pub struct Witness {
    pub f: PLFunction,
    pub value: Rat,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Existence,
    pub method: String,
    pub witness: Option<Witness>,
    /// Ordered key/value pairs: a, barycenter, cone membership reports, the
    /// search minimum, and similar method-specific facts.
    pub diagnostics: Vec<(String, String)>,
}

impl Verdict {
    pub fn diagnostic(&self, key: &str) -> Option<&str> {
        self.diagnostics.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// Dispatches to the decisive criterion covering the model, falling back to
/// the (non-conclusive) destabilizer search.
pub fn check_csck(model: &NormalizedModel, tol: f64, params: &SearchParams) -> Result<Verdict, Error> {
    if model.rank == 1 {
        return check_rank_one(model);
    }
    if model.rank == 2 && model.is_toric() {
        return check_toric_surface(model, tol);
    }
    let report = search_destabilizer(model, params)?;
    let mut diagnostics = vec![
        ("search_best_value".into(), crate::rational::rat_str(&report.best_value)),
        ("search_seed".into(), report.seed.to_string()),
        (
            "note".into(),
            "no decisive criterion applies; absence of a destabilizer is not a stability proof"
                .into(),
        ),
    ];
    if num::Signed::is_negative(&report.best_value) {
        diagnostics.truncate(2);
        return Ok(Verdict {
            outcome: Existence::NotExists,
            method: "search".into(),
            witness: Some(Witness { f: report.best_f, value: report.best_value }),
            diagnostics,
        });
    }
    Ok(Verdict {
        outcome: Existence::Indeterminate,
        method: "search".into(),
        witness: None,
        diagnostics,
    })
}
