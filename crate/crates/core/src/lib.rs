//! Exact invariants and orbit decisions for rational polyhedra under the
//! group `GL(n,Z) ⋉ Z^n` of unimodular affine maps.

pub mod affine;
pub mod angle;
pub mod complex;
pub mod conic;
pub mod cone;
pub mod ellipse;
pub mod error;
pub mod io;
pub mod lattice;
pub mod legendre;
pub mod linalg;
pub mod map;
pub mod num;
pub mod point;
pub mod polyhedra;
pub mod segment;
pub mod simplex;

pub use error::{Error, Result};
pub use map::{phi_vw, UniAffMap};
pub use num::{Int, Limits, Rat};
pub use point::{HomVec, RatPoint};
pub use simplex::{complete_to_lattice_basis, extends_to_basis, farey_mediant, is_regular, RatSimplex};
