//! Fox colorings and the homology of double branched covers for alternating
//! pretzel, Montesinos and 2-bridge link diagrams, with checkers for the
//! Kauffman-Harary conjecture and its homological generalization.

pub mod arith;
mod bigser;
pub mod checker;
pub mod coloring;
pub mod diagram;
pub mod homology;
pub mod linalg;

pub use diagram::{ArcId, Crossing, DiagramError, Family, LinkDiagram};
pub use linalg::{AbelianGroupShape, IntegerMatrix};
