//! Newton diagrams of isolated surface singularities with rational homology sphere links:
//! the forward map to resolution graphs and orbifold diagrams, and its inverse.

pub mod corpus;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod inverse;
pub mod lattice;
pub mod oka;
pub mod resgraph;

pub use diagram::NewtonDiagram;
pub use error::{Error, Result};
pub use lattice::{IVec3, Rat};
