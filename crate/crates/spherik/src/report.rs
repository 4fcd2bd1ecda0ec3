//! Machine- and human-readable reports. All rationals are exact "p/q"
//! strings; floating point appears only in explicitly numeric fields
//! (search traces, Hilbert fits).

use serde::{Deserialize, Serialize};

use crate::criteria::{Existence, SearchReport, Verdict};
use crate::functional::{pl_function_to_json, PLFunction};
use crate::rational::rat_str;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    /// Ordered key/value facts; values are exact strings.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<(String, String)>,
    pub provenance: Provenance,
    /// Wall-clock milliseconds; the one field exempt from byte-stability.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub pieces: serde_json::Value,
    /// Exact L-value of the witness, as "p/q".
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// Which decision path fired.
    pub criterion: String,
    /// The mathematical statement the path instantiates.
    pub statement: String,
}

pub fn provenance_for(method: &str) -> Provenance {
    let statement = match method {
        "fano-barycenter" => {
            "a spherical Fano variety admits a Kähler–Einstein metric iff the barycenter of \
             its anticanonical moment polytope against P dmu lies in 2*varpi_X plus the \
             relative interior of the dual of the opposite valuation cone"
        }
        "rank-one" => {
            "for rank-one spherical varieties, a cscK metric exists iff L(ell) >= 0 on a \
             generator ell of the valuation cone, with equality exactly in the horospherical \
             case"
        }
        "toric-surface" => {
            "a smooth polarized toric surface is cscK iff L(max(l1, l2)) >= 0 for all pairs \
             of affine functions"
        }
        "search" => {
            "a convex PL test function with negative L certifies K-instability; the converse \
             direction is not decided by search"
        }
        "functional" => {
            "cscK existence for polarized spherical varieties is equivalent to L(f) >= 0 for \
             every admissible convex PL test function f"
        }
        "hilbert" => {
            "the normalized weight of the k-th power of the polarization expands as \
             F0 - F1/k + o(1/k); F1 is proportional to L on the test configuration"
        }
        _ => "model description; no criterion applied",
    };
    Provenance { criterion: method.to_string(), statement: statement.to_string() }
}

pub fn witness_report(f: &PLFunction, value: &crate::rational::Rat) -> WitnessReport {
    WitnessReport {
        pieces: pl_function_to_json(f)["pieces"].clone(),
        value: rat_str(value),
    }
}

pub fn verdict_report(command: &str, verdict: &Verdict) -> Report {
    Report {
        command: command.to_string(),
        outcome: Some(verdict.outcome.as_str().to_string()),
        witness: verdict.witness.as_ref().map(|w| witness_report(&w.f, &w.value)),
        facts: verdict.diagnostics.clone(),
        provenance: provenance_for(&verdict.method),
        timing_ms: None,
    }
}

pub fn search_report(report: &SearchReport) -> Report {
    let mut facts = vec![
        ("m".into(), report.m.to_string()),
        ("seed".into(), report.seed.to_string()),
        ("evaluations".into(), report.evaluations.to_string()),
        ("best_value".into(), rat_str(&report.best_value)),
        (
            "trace".into(),
            report.trace.iter().map(|v| format!("{v:.6e}")).collect::<Vec<_>>().join(","),
        ),
    ];
    if !num::Signed::is_negative(&report.best_value) {
        facts.push((
            "note".into(),
            "no destabilizer found; this does not certify stability".into(),
        ));
    }
    Report {
        command: "search".into(),
        outcome: None,
        witness: Some(witness_report(&report.best_f, &report.best_value)),
        facts,
        provenance: provenance_for("search"),
        timing_ms: None,
    }
}

pub fn exit_code_for(outcome: Option<Existence>) -> i32 {
    match outcome {
        None | Some(Existence::Exists) => 0,
        Some(Existence::NotExists) => 1,
        Some(Existence::Indeterminate) => 2,
    }
}

pub fn emit_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("command:   {}\n", report.command));
    if let Some(o) = &report.outcome {
        out.push_str(&format!("outcome:   {o}\n"));
    }
    for (k, v) in &report.facts {
        out.push_str(&format!("{k:<24} {v}\n"));
    }
    if let Some(w) = &report.witness {
        out.push_str(&format!("witness L: {}\n", w.value));
        out.push_str(&format!("witness f: {}\n", w.pieces));
    }
    out.push_str(&format!("criterion: {}\n", report.provenance.criterion));
    out.push_str(&format!("statement: {}\n", report.provenance.statement));
    if let Some(t) = report.timing_ms {
        out.push_str(&format!("time_ms:   {t}\n"));
    }
    out
}
