//! The two adjunctions between edge and node weights, their composites,
//! the opening on edges and the closing on nodes.

use crate::error::{Error, Result};
use crate::graph::{Carrier, WeightedGraph};
use crate::weight::Weight;

/// Weight per node of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeField(pub Vec<Weight>);

/// Weight per edge of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeField(pub Vec<Weight>);

/// A field on either carrier, for [`compose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Nodes(NodeField),
    Edges(EdgeField),
}

impl Field {
    pub fn carrier(&self) -> Carrier {
        match self {
            Field::Nodes(_) => Carrier::Nodes,
            Field::Edges(_) => Carrier::Edges,
        }
    }
}

/// `[ε_en n]_ij = n_i ∧ n_j`
pub fn erode_nodes_to_edges(g: &WeightedGraph, n: &[Weight]) -> Vec<Weight> {
    g.edges().iter().map(|&(u, v)| n[u].min(n[v])).collect()
}

/// `[δ_en n]_ij = n_i ∨ n_j`
pub fn dilate_nodes_to_edges(g: &WeightedGraph, n: &[Weight]) -> Vec<Weight> {
    g.edges().iter().map(|&(u, v)| n[u].max(n[v])).collect()
}

/// `[δ_ne e]_i = max of adjacent edges`, `Bottom` on isolated nodes.
pub fn dilate_edges_to_nodes(g: &WeightedGraph, e: &[Weight]) -> Vec<Weight> {
    (0..g.node_count())
        .map(|i| g.neighbors(i).iter().map(|&(_, k)| e[k]).max().unwrap_or(Weight::Bottom))
        .collect()
}

/// `[ε_ne e]_i = min of adjacent edges`, `Top` on isolated nodes.
pub fn erode_edges_to_nodes(g: &WeightedGraph, e: &[Weight]) -> Vec<Weight> {
    (0..g.node_count())
        .map(|i| g.neighbors(i).iter().map(|&(_, k)| e[k]).min().unwrap_or(Weight::Top))
        .collect()
}

/// The four elementary operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// ε_en: nodes -> edges
    ErodeNodesToEdges,
    /// δ_en: nodes -> edges
    DilateNodesToEdges,
    /// ε_ne: edges -> nodes
    ErodeEdgesToNodes,
    /// δ_ne: edges -> nodes
    DilateEdgesToNodes,
}

impl Elementary {
    fn input(self) -> Carrier {
        match self {
            Elementary::ErodeNodesToEdges | Elementary::DilateNodesToEdges => Carrier::Nodes,
            _ => Carrier::Edges,
        }
    }

    pub fn apply(self, g: &WeightedGraph, f: &Field) -> Result<Field> {
        let check = |expected: Carrier, len: usize, want: usize| -> Result<()> {
            if len != want {
                return Err(Error::FieldLength { carrier: expected, expected: want, found: len });
            }
            Ok(())
        };
        match (self, f) {
            (op, Field::Nodes(n)) if op.input() == Carrier::Nodes => {
                check(Carrier::Nodes, n.0.len(), g.node_count())?;
                Ok(Field::Edges(EdgeField(match op {
                    Elementary::ErodeNodesToEdges => erode_nodes_to_edges(g, &n.0),
                    _ => dilate_nodes_to_edges(g, &n.0),
                })))
            }
            (op, Field::Edges(e)) if op.input() == Carrier::Edges => {
                check(Carrier::Edges, e.0.len(), g.edge_count())?;
                Ok(Field::Nodes(NodeField(match op {
                    Elementary::ErodeEdgesToNodes => erode_edges_to_nodes(g, &e.0),
                    _ => dilate_edges_to_nodes(g, &e.0),
                })))
            }
            (op, f) => Err(Error::CarrierMismatch { expected: op.input(), found: f.carrier() }),
        }
    }
}

/// Applies `chain` right-to-left, like function composition.
pub fn compose(g: &WeightedGraph, chain: &[Elementary], field: Field) -> Result<Field> {
    chain.iter().rev().try_fold(field, |f, op| op.apply(g, &f))
}

pub const EROSION_N: [Elementary; 2] = [Elementary::ErodeEdgesToNodes, Elementary::ErodeNodesToEdges];
pub const DILATION_N: [Elementary; 2] = [Elementary::DilateEdgesToNodes, Elementary::DilateNodesToEdges];
pub const EROSION_E: [Elementary; 2] = [Elementary::ErodeNodesToEdges, Elementary::ErodeEdgesToNodes];
pub const DILATION_E: [Elementary; 2] = [Elementary::DilateNodesToEdges, Elementary::DilateEdgesToNodes];

/// `ε_n = ε_ne ε_en`
pub fn erode_n(g: &WeightedGraph, n: &[Weight]) -> Vec<Weight> {
    erode_edges_to_nodes(g, &erode_nodes_to_edges(g, n))
}

/// `ε_e = ε_en ε_ne`
pub fn erode_e(g: &WeightedGraph, e: &[Weight]) -> Vec<Weight> {
    erode_nodes_to_edges(g, &erode_edges_to_nodes(g, e))
}

/// `γ_e = δ_en ε_ne`: lowers every edge that is the lowest edge of
/// neither extremity.
pub fn opening_gamma_e(g: &WeightedGraph, e: &[Weight]) -> Vec<Weight> {
    dilate_nodes_to_edges(g, &erode_edges_to_nodes(g, e))
}

/// `φ_n = ε_ne δ_en`: raises isolated regional minima to their lowest
/// neighbor.
pub fn closing_phi_n(g: &WeightedGraph, n: &[Weight]) -> Vec<Weight> {
    erode_edges_to_nodes(g, &dilate_nodes_to_edges(g, n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    GammaE,
    PhiN,
}

pub fn is_invariant(g: &WeightedGraph, field: &[Weight], which: Filter) -> bool {
    match which {
        Filter::GammaE => opening_gamma_e(g, field) == field,
        Filter::PhiN => closing_phi_n(g, field) == field,
    }
}
