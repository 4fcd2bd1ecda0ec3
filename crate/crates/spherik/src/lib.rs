//! spherik: verdicts on existence of canonical Kähler metrics on polarized
//! spherical varieties, from combinatorial input, in exact rational
//! arithmetic.
//!
//! The input is the combinatorial shadow of a polarized spherical variety:
//! moment polytope, restricted root data with its Gram matrix, lattice of
//! weights, and valuation cone. From these the crate builds the weight
//! densities P and Q, evaluates the stability functional L on convex
//! piecewise-linear test functions, and applies the decisive criteria
//! (Fano barycenter, rank one, toric surfaces) or searches for a
//! destabilizer.

pub mod cli;
pub mod criteria;
pub mod error;
pub mod functional;
pub mod geometry;
pub mod model;
pub mod polynomial;
pub mod rational;
pub mod report;

pub use error::Error;
pub use functional::{eval_l, FunctionalData, PLFunction};
pub use model::{normalize, parse_spherical_data, NormalizedModel, SphericalData};
