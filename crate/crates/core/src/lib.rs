//! Discrete Morse theory and watershed-cuts on simplicial pseudomanifolds.
//!
//! A basic simplicial stack and a basic discrete Morse function are the same
//! object up to sign. The gradient vector field of such a stack induces a
//! forest on the dual graph, and that forest is the unique minimum spanning
//! forest relative to the minima; its cut is the watershed-cut. This crate
//! builds each of those objects and provides brute-force oracles that check
//! them against their definitions.

pub mod complex;
pub mod dsu;
pub mod dual;
mod error;
pub mod format;
pub mod generate;
pub mod morse;
pub mod oracles;

pub use complex::{closure, simplex, Complex, Pseudomanifold, Simplex, SimplexSet};
pub use dual::{watershed_cut, DualGraph, MsfCut, RelativeForest, Strategy};
pub use error::{Error, Result};
pub use morse::{GradientVectorField, ValuedComplex};
