//! Perfectness of connected claw-free graphs with one extra forbidden induced
//! subgraph and independence number at least four.

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod families;
pub mod format;
pub mod graph;
pub mod holes;
pub mod iso;

pub use graph::{Graph, GraphError, VertexSet};
