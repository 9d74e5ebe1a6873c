//! The Lie algebra of a graph and its structural invariants.

mod center;
mod derivations;
mod invariants;
mod isomorphism;
mod series;
mod structure;

pub use derivations::DerivationSpace;
pub use invariants::{CompletelySolvableReport, Fingerprint};
pub use isomorphism::{BasisMap, IsomorphismFailure};
pub use series::SeriesCheck;
pub use structure::{BasisElement, GraphLieAlgebra, JacobiReport, SparseVec};
