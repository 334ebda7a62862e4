//! Simplices, complexes, collapses and validated pseudomanifolds.

mod cells;
mod pseudomanifold;
mod simplex;

pub use cells::{closure, d_connected_components, incidence_components, Complex, FreePair};
pub use pseudomanifold::{validate_pseudomanifold, CellId, Pseudomanifold, PseudomanifoldViolation};
pub use simplex::{simplex, Simplex, SimplexSet, Vertex};
