use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("polyhedron is empty")]
    EmptyPolytope,
    #[error("polyhedron is unbounded")]
    UnboundedPolytope,
    #[error("polytope is not full-dimensional")]
    Degenerate,
    #[error("vector is not a primitive integer vector")]
    NotPrimitive,
    #[error("slope outside the valuation cone: piece {0}")]
    SlopeOutsideCone(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
