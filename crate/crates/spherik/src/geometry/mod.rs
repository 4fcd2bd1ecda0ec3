//! Exact rational polyhedral geometry: cones, polytopes, lattice charts and
//! polynomial integration.

pub mod cone;
pub mod hermite;
pub mod integrate;
pub mod polytope;

pub use cone::PolyhedralCone;
pub use hermite::hermite_extend;
pub use integrate::{integrate_polynomial, integrate_polynomial_boundary};
pub use polytope::{RationalPolytope, Simplex};
