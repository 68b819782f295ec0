//! Graph morphology: flooding adjunctions between node and edge weights,
//! k-steep pruning, lexicographic path algebra, watershed partitions and
//! waterfall hierarchies.

// node/edge index loops read better than iterator chains in graph code
#![allow(clippy::needless_range_loop)]

pub mod adjunction;
pub mod error;
pub mod flooding;
pub mod geodesics;
pub mod graph;
pub mod hq;
pub mod lexalgebra;
pub mod steepness;
pub mod structure;
pub mod tie;
pub mod waterfall;
pub mod watershed;
pub mod weight;
pub mod wgr;

pub use error::{Error, Result};
pub use flooding::FloodingGraph;
pub use graph::{Carrier, EdgeId, EdgeSet, Label, Labeling, NodeId, NodeSet, WeightedGraph};
pub use weight::Weight;
pub use tie::TiePolicy;
