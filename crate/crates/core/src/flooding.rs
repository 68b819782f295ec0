//! Flooding graphs: `δ_en n = e` and `ε_ne e = n`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::adjunction::{dilate_nodes_to_edges, erode_edges_to_nodes};
use crate::error::{Error, Result};
use crate::graph::{Carrier, EdgeId, EdgeSet, Label, Labeling, NodeId, WeightedGraph};
use crate::structure::{expand_isolated_minima, lowest_edge_filter, regional_minima, regions_to_labeling, LowestMode};
use crate::weight::Weight;

/// A graph whose node and edge weights satisfy both flooding identities.
/// Only constructible through validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloodingGraph {
    graph: WeightedGraph,
}

impl FloodingGraph {
    pub fn new(graph: WeightedGraph) -> Result<Self> {
        let report = validate_flooding(&graph)?;
        if !report.is_valid() {
            return Err(Error::InvalidFloodingGraph(report.violations.len()));
        }
        Ok(FloodingGraph { graph })
    }

    /// Skips validation; callers guarantee the identities hold.
    pub(crate) fn new_unchecked(graph: WeightedGraph) -> Self {
        debug_assert!(validate_flooding(&graph).map(|r| r.is_valid()).unwrap_or(false));
        FloodingGraph { graph }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn into_graph(self) -> WeightedGraph {
        self.graph
    }

    pub fn node_weights(&self) -> &[Weight] {
        self.graph.node_weights().unwrap()
    }

    pub fn edge_weights(&self) -> &[Weight] {
        self.graph.edge_weights().unwrap()
    }

    /// Partial graph on `keep`; the caller guarantees every node keeps a
    /// lower-or-equal adjacent edge, which preserves the flooding identities.
    pub(crate) fn partial(&self, keep: &EdgeSet) -> FloodingGraph {
        FloodingGraph::new_unchecked(self.graph.partial(keep))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub carrier: Carrier,
    pub index: usize,
    pub expected: Weight,
    pub found: Weight,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both identities; lists every offending node and edge.
pub fn validate_flooding(g: &WeightedGraph) -> Result<ValidationReport> {
    let n = g.require_node_weights()?;
    let e = g.require_edge_weights()?;
    let mut violations = Vec::new();
    for (k, (&want, &got)) in dilate_nodes_to_edges(g, n).iter().zip(e).enumerate() {
        if want != got {
            violations.push(Violation { carrier: Carrier::Edges, index: k, expected: want, found: got });
        }
    }
    for (i, (&want, &got)) in erode_edges_to_nodes(g, e).iter().zip(n).enumerate() {
        if want != got {
            violations.push(Violation { carrier: Carrier::Nodes, index: i, expected: want, found: got });
        }
    }
    Ok(ValidationReport { violations })
}

/// `(↓e, ε_ne ↓e)`
pub fn flooding_from_edges(g: &WeightedGraph) -> Result<FloodingGraph> {
    let keep = lowest_edge_filter(g, LowestMode::LowestEdges)?;
    let p = g.partial(&keep).without_node_weights();
    let n = erode_edges_to_nodes(&p, p.edge_weights().unwrap());
    Ok(FloodingGraph::new_unchecked(p.with_node_weights(n)?))
}

/// `(δ_en ⊸n, ⊸n)`
pub fn flooding_from_nodes(g: &WeightedGraph) -> Result<FloodingGraph> {
    let x = expand_isolated_minima(g)?;
    let e = dilate_nodes_to_edges(&x, x.node_weights().unwrap());
    Ok(FloodingGraph::new_unchecked(x.with_edge_weights(e)?))
}

/// A node outside the minima and the incident edge of equal weight it
/// floods through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FloodingPair {
    pub node: NodeId,
    pub edge: EdgeId,
}

/// Drainage structure shared by the pairing and the scissor.
///
/// Every node outside the minima gets the pairs it may drain through:
/// pairs towards strictly lower neighbors for plateau exits, and pairs
/// towards the previous breadth-first layer for inner plateau nodes.
/// `order` lists outside nodes so that every candidate comes first.
pub(crate) struct Drainage {
    pub order: Vec<NodeId>,
    pub candidates: Vec<Vec<(NodeId, EdgeId)>>,
}

pub(crate) fn drainage(g: &FloodingGraph, minima: &Labeling) -> Drainage {
    let gr = g.graph();
    let w = g.node_weights();
    let n = gr.node_count();
    let outside = |i: NodeId| minima.get(i) == Label::Unset;
    let mut candidates = vec![Vec::new(); n];
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for i in (0..n).filter(|&i| outside(i)) {
        candidates[i] = gr.neighbors(i).iter().copied().filter(|&(j, _)| w[j] < w[i]).collect();
        if !candidates[i].is_empty() {
            dist[i] = 0;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        for &(j, _) in gr.neighbors(i) {
            if w[j] == w[i] && dist[j] == usize::MAX {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    let mut order: Vec<NodeId> = (0..n).filter(|&i| outside(i)).collect();
    for &i in &order {
        assert!(dist[i] != usize::MAX, "plateau without exit at node {i}");
        if dist[i] > 0 {
            candidates[i] =
                gr.neighbors(i).iter().copied().filter(|&(j, _)| w[j] == w[i] && dist[j] + 1 == dist[i]).collect();
        }
    }
    order.sort_by_key(|&i| (w[i], dist[i], i));
    Drainage { order, candidates }
}

/// One pair per node outside the minima, forming a forest that drains to
/// the minima. Ties go to the smallest neighbor id; plateaus follow a
/// breadth-first tree grown from their exits.
pub fn flooding_pairs(g: &FloodingGraph) -> Result<Vec<FloodingPair>> {
    let minima = minima_of_flooding(g)?;
    let d = drainage(g, &minima);
    let mut pairs: Vec<FloodingPair> =
        d.order.iter().map(|&i| FloodingPair { node: i, edge: d.candidates[i][0].1 }).collect();
    pairs.sort_by_key(|p| p.node);
    Ok(pairs)
}

/// Labeling of the regional minima, computed on nodes and on edges and
/// checked to agree. Isolated nodes count as their own minimum.
pub fn minima_of_flooding(g: &FloodingGraph) -> Result<Labeling> {
    let gr = g.graph();
    let by_nodes = regional_minima(gr, Carrier::Nodes)?;
    let mut by_edges = regional_minima(gr, Carrier::Edges)?;
    for i in (0..gr.node_count()).filter(|&i| gr.degree(i) == 0) {
        let mut r = by_nodes.iter().find(|r| r.nodes.contains(i)).expect("isolated node is a minimum").clone();
        r.level = g.node_weights()[i];
        by_edges.push(r);
    }
    let a = regions_to_labeling(gr.node_count(), &by_nodes);
    let b = regions_to_labeling(gr.node_count(), &by_edges).canonical();
    if a != b {
        return Err(Error::InvalidFloodingGraph(1));
    }
    Ok(a)
}

/// Flooding graph whose minima weigh 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFloodingGraph {
    pub graph: WeightedGraph,
    pub minima: Labeling,
}

/// Sets every minimum node, and every edge inside a minimum, to 0 so that
/// `δ_en n = e` keeps holding.
pub fn to_m_flooding(g: &FloodingGraph) -> Result<MFloodingGraph> {
    let minima = minima_of_flooding(g)?;
    let gr = g.graph();
    let mut n = g.node_weights().to_vec();
    for i in 0..n.len() {
        match minima.get(i) {
            Label::Unset if n[i] <= Weight::ZERO => return Err(Error::ZeroNonMinimum(i)),
            Label::Unset => {}
            _ => n[i] = Weight::ZERO,
        }
    }
    let e = dilate_nodes_to_edges(gr, &n);
    let graph = gr.clone().with_node_weights(n)?.with_edge_weights(e)?;
    Ok(MFloodingGraph { graph, minima })
}
