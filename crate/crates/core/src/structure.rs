//! Structural operators: components, flat zones, regional minima,
//! contraction, expansion of isolated minima and lowest-edge filters.

use petgraph::unionfind::UnionFind;

use crate::error::Result;
use crate::graph::{Carrier, EdgeId, EdgeSet, Label, Labeling, NodeId, NodeSet, WeightedGraph};
use crate::weight::Weight;

/// Labels consecutive from 1 for the root classes of `uf`, numbered by
/// smallest member.
fn labels_from_classes(uf: &UnionFind<usize>, n: usize) -> Labeling {
    let mut of_root = vec![0u32; n];
    let mut next = 0;
    let out = (0..n)
        .map(|i| {
            let r = uf.find(i);
            if of_root[r] == 0 {
                next += 1;
                of_root[r] = next;
            }
            Label::Basin(of_root[r])
        })
        .collect();
    Labeling(out)
}

/// Two nodes share a label iff a path inside `restrict` joins them.
pub fn connected_components(g: &WeightedGraph, restrict: &EdgeSet) -> Labeling {
    let mut uf = UnionFind::new(g.node_count());
    for e in restrict.iter() {
        let (u, v) = g.edge(e);
        uf.union(u, v);
    }
    labels_from_classes(&uf, g.node_count())
}

pub fn is_connected(g: &WeightedGraph) -> bool {
    let l = connected_components(g, &EdgeSet::full(g.edge_count()));
    l.0.iter().all(|&x| x == Label::Basin(1))
}

/// Flat zones of the chosen carrier, labelled over that carrier (node
/// labels for `Nodes`, edge labels for `Edges`).
pub fn flat_zones(g: &WeightedGraph, mode: Carrier) -> Result<Labeling> {
    match mode {
        Carrier::Nodes => {
            let w = g.require_node_weights()?;
            let mut uf = UnionFind::new(g.node_count());
            for &(u, v) in g.edges() {
                if w[u] == w[v] {
                    uf.union(u, v);
                }
            }
            Ok(labels_from_classes(&uf, g.node_count()))
        }
        Carrier::Edges => {
            let w = g.require_edge_weights()?;
            let mut uf = UnionFind::new(g.edge_count());
            for i in 0..g.node_count() {
                let nb = g.neighbors(i);
                for a in 0..nb.len() {
                    for b in a + 1..nb.len() {
                        if w[nb[a].1] == w[nb[b].1] {
                            uf.union(nb[a].1, nb[b].1);
                        }
                    }
                }
            }
            Ok(labels_from_classes(&uf, g.edge_count()))
        }
    }
}

/// A regional minimum: the nodes it spans, its inner edges and its level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub nodes: NodeSet,
    pub edges: EdgeSet,
    pub level: Weight,
}

/// Regional minima of the chosen carrier, ordered by smallest node.
///
/// Node mode: flat zones with no lower neighbor. Edge mode: edge flat zones
/// whose cocycle is strictly higher. Isolated nodes are node minima but
/// never edge minima.
pub fn regional_minima(g: &WeightedGraph, mode: Carrier) -> Result<Vec<Region>> {
    let zones = flat_zones(g, mode)?;
    let w = g.weights(mode)?;
    let count = zones.0.iter().filter_map(|l| l.basin()).max().unwrap_or(0) as usize;
    let mut is_min = vec![true; count];
    let zone = |x: usize| zones.0[x].basin().unwrap() as usize - 1;
    match mode {
        Carrier::Nodes => {
            for &(u, v) in g.edges() {
                if w[u] < w[v] {
                    is_min[zone(v)] = false;
                } else if w[v] < w[u] {
                    is_min[zone(u)] = false;
                }
            }
        }
        Carrier::Edges => {
            // an edge zone fails as soon as one node it touches has a lower edge
            for i in 0..g.node_count() {
                let Some(low) = g.neighbors(i).iter().map(|&(_, e)| w[e]).min() else { continue };
                for &(_, e) in g.neighbors(i) {
                    if w[e] > low {
                        is_min[zone(e)] = false;
                    }
                }
            }
        }
    }
    let mut regions: Vec<Region> = Vec::new();
    let mut slot = vec![usize::MAX; count];
    let (n, m) = (g.node_count(), g.edge_count());
    match mode {
        Carrier::Nodes => {
            for i in 0..n {
                let z = zone(i);
                if !is_min[z] {
                    continue;
                }
                if slot[z] == usize::MAX {
                    slot[z] = regions.len();
                    regions.push(Region { nodes: NodeSet::empty(n), edges: EdgeSet::empty(m), level: w[i] });
                }
                regions[slot[z]].nodes.insert(i);
            }
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                let z = zone(u);
                if is_min[z] && zone(v) == z {
                    regions[slot[z]].edges.insert(e);
                }
            }
        }
        Carrier::Edges => {
            for i in 0..n {
                for &(_, e) in g.neighbors(i) {
                    let z = zone(e);
                    if !is_min[z] {
                        continue;
                    }
                    if slot[z] == usize::MAX {
                        slot[z] = regions.len();
                        regions.push(Region { nodes: NodeSet::empty(n), edges: EdgeSet::empty(m), level: w[e] });
                    }
                    regions[slot[z]].nodes.insert(i);
                    regions[slot[z]].edges.insert(e);
                }
            }
        }
    }
    Ok(regions)
}

/// Node labeling of the regional minima (label k for the k-th region,
/// `Unset` elsewhere).
pub fn minima_labeling(g: &WeightedGraph, mode: Carrier) -> Result<Labeling> {
    Ok(regions_to_labeling(g.node_count(), &regional_minima(g, mode)?))
}

pub(crate) fn regions_to_labeling(n: usize, regions: &[Region]) -> Labeling {
    let mut l = Labeling::unset(n);
    for (k, r) in regions.iter().enumerate() {
        for i in r.nodes.iter() {
            l.0[i] = Label::Basin(k as u32 + 1);
        }
    }
    l
}

/// Result of contracting a set of edges.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: WeightedGraph,
    /// Old node -> new node (surjective).
    pub node_map: Vec<NodeId>,
    /// New edge -> the old edge it came from (lowest weight, then lowest id).
    pub edge_origin: Vec<EdgeId>,
}

/// Contracts every edge of `h`: each component of `h` becomes one node,
/// numbered by its smallest old node. Surviving edges keep their weights;
/// parallel edges collapse to the lowest one. Node weights are dropped.
pub fn contract(g: &WeightedGraph, h: &EdgeSet) -> Contraction {
    let comp = connected_components(g, h);
    let node_map: Vec<NodeId> = comp.0.iter().map(|l| l.basin().unwrap() as usize - 1).collect();
    let n2 = comp.basin_count();
    let ew = g.edge_weights();
    let key = |e: EdgeId| (ew.map(|w| w[e]), e);
    let mut best: std::collections::BTreeMap<(NodeId, NodeId), EdgeId> = Default::default();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = (node_map[u], node_map[v]);
        if a == b {
            continue;
        }
        let k = (a.min(b), a.max(b));
        best.entry(k).and_modify(|old| if key(e) < key(*old) { *old = e }).or_insert(e);
    }
    let edge_origin: Vec<EdgeId> = best.values().copied().collect();
    let mut graph = WeightedGraph::new(n2, best.keys().copied()).expect("contraction is simple");
    if let Some(w) = ew {
        graph = graph.with_edge_weights(edge_origin.iter().map(|&e| w[e]).collect()).unwrap();
    }
    let mut dummy = vec![true; n2];
    for (i, &c) in node_map.iter().enumerate() {
        dummy[c] &= g.is_dummy(i);
    }
    Contraction { graph: graph.with_dummies(dummy), node_map, edge_origin }
}

/// Attaches a dummy node of equal weight to every single-node regional
/// minimum. Dummies get ids `N..` and the dummy flag. Edge weights, if any,
/// are dropped.
pub fn expand_isolated_minima(g: &WeightedGraph) -> Result<WeightedGraph> {
    let w = g.require_node_weights()?;
    let minima = regional_minima(g, Carrier::Nodes)?;
    let n = g.node_count();
    let singles: Vec<NodeId> =
        minima.iter().filter(|r| r.nodes.len() == 1).map(|r| r.nodes.iter().next().unwrap()).collect();
    let mut edges = g.edges().to_vec();
    let mut weights = w.to_vec();
    let mut dummy = g.dummy_flags().to_vec();
    for (k, &i) in singles.iter().enumerate() {
        edges.push((i, n + k));
        weights.push(w[i]);
        dummy.push(true);
    }
    Ok(WeightedGraph::new(n + singles.len(), edges)?.with_node_weights(weights)?.with_dummies(dummy))
}

/// Mode of [`lowest_edge_filter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowestMode {
    /// Keep, for each node, its lowest adjacent edges.
    LowestEdges,
    /// Keep, for each node, the edges towards its lowest neighbors.
    LowestNodes,
}

pub fn lowest_edge_filter(g: &WeightedGraph, mode: LowestMode) -> Result<EdgeSet> {
    let mut keep = EdgeSet::empty(g.edge_count());
    let w = match mode {
        LowestMode::LowestEdges => g.require_edge_weights()?,
        LowestMode::LowestNodes => g.require_node_weights()?,
    };
    let value = |j: NodeId, e: EdgeId| match mode {
        LowestMode::LowestEdges => w[e],
        LowestMode::LowestNodes => w[j],
    };
    for i in 0..g.node_count() {
        let nb = g.neighbors(i);
        if let Some(low) = nb.iter().map(|&(j, e)| value(j, e)).min() {
            for &(j, e) in nb {
                if value(j, e) == low {
                    keep.insert(e);
                }
            }
        }
    }
    Ok(keep)
}
