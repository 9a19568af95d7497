//! Cube-complex models of ordered configuration spaces of graphs with sink
//! vertices, exact integral homology, and explicit generating cycles.

pub mod basic_classes;
pub mod cell;
pub mod chain;
pub mod complex;
pub mod cycles;
pub mod elimination;
pub mod graph;
pub mod homology;
pub mod matrix;
mod ring;
pub mod union_find;
pub mod verify;

pub use cell::{CubeCell, Particle, ParticleState};
pub use chain::Chain;
pub use complex::CubeComplex;
pub use graph::{build_graph, wedge, EdgeEnd, End, Family, Graph, GraphSpec};
pub use homology::{homology, HomologySummary};
pub use matrix::SparseIntMatrix;
