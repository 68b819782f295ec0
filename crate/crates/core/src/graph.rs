//! Graph data model: dense node ids, normalized undirected edges, optional
//! weights per carrier.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weight::Weight;

pub type NodeId = usize;
pub type EdgeId = usize;

/// Which carrier a field or operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Carrier {
    Nodes,
    Edges,
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Carrier::Nodes => "node",
            Carrier::Edges => "edge",
        })
    }
}

/// Undirected simple graph with optional node and edge weights.
///
/// Edges are stored as `(u, v)` with `u < v`; an edge's id is its index.
/// Immutable once built: the `with_*` methods consume and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(NodeId, NodeId)>,
    adj: Vec<Vec<(NodeId, EdgeId)>>,
    node_weights: Option<Vec<Weight>>,
    edge_weights: Option<Vec<Weight>>,
    dummy: Vec<bool>,
}

impl WeightedGraph {
    /// Builds an unweighted graph; rejects self-loops, parallel edges and
    /// out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut list = Vec::new();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) has an endpoint >= {n}")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on node {a}")));
            }
            let (u, v) = (a.min(b), a.max(b));
            if adj[u].iter().any(|&(w, _)| w == v) {
                return Err(Error::InvalidGraph(format!("parallel edge ({u},{v})")));
            }
            let id = list.len();
            list.push((u, v));
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(WeightedGraph { n, edges: list, adj, node_weights: None, edge_weights: None, dummy: vec![false; n] })
    }

    pub fn with_node_weights(mut self, w: Vec<Weight>) -> Result<Self> {
        check_len(Carrier::Nodes, self.n, w.len())?;
        self.node_weights = Some(w);
        Ok(self)
    }

    pub fn with_edge_weights(mut self, w: Vec<Weight>) -> Result<Self> {
        check_len(Carrier::Edges, self.edges.len(), w.len())?;
        self.edge_weights = Some(w);
        Ok(self)
    }

    pub fn without_node_weights(mut self) -> Self {
        self.node_weights = None;
        self
    }

    pub fn without_edge_weights(mut self) -> Self {
        self.edge_weights = None;
        self
    }

    pub(crate) fn with_dummies(mut self, dummy: Vec<bool>) -> Self {
        debug_assert_eq!(dummy.len(), self.n);
        self.dummy = dummy;
        self
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// `(neighbor, edge)` pairs sorted by neighbor id.
    pub fn neighbors(&self, i: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adj[i]
    }

    pub fn degree(&self, i: NodeId) -> usize {
        self.adj[i].len()
    }

    pub fn find_edge(&self, a: NodeId, b: NodeId) -> Option<EdgeId> {
        self.adj[a].iter().find(|&&(w, _)| w == b).map(|&(_, e)| e)
    }

    pub fn node_weights(&self) -> Option<&[Weight]> {
        self.node_weights.as_deref()
    }

    pub fn edge_weights(&self) -> Option<&[Weight]> {
        self.edge_weights.as_deref()
    }

    pub fn require_node_weights(&self) -> Result<&[Weight]> {
        self.node_weights().ok_or(Error::MissingWeights(Carrier::Nodes))
    }

    pub fn require_edge_weights(&self) -> Result<&[Weight]> {
        self.edge_weights().ok_or(Error::MissingWeights(Carrier::Edges))
    }

    pub fn weights(&self, c: Carrier) -> Result<&[Weight]> {
        match c {
            Carrier::Nodes => self.require_node_weights(),
            Carrier::Edges => self.require_edge_weights(),
        }
    }

    /// Nodes added by the expansion operator carry this flag so exporters
    /// can hide them.
    pub fn is_dummy(&self, i: NodeId) -> bool {
        self.dummy[i]
    }

    pub fn dummy_flags(&self) -> &[bool] {
        &self.dummy
    }

    /// Number of leading non-dummy nodes (dummies always come last).
    pub fn original_node_count(&self) -> usize {
        self.dummy.iter().position(|&d| d).unwrap_or(self.n)
    }

    /// Partial graph keeping the edges of `keep`, in their original order,
    /// with their weights. Node data is untouched.
    pub fn partial(&self, keep: &EdgeSet) -> WeightedGraph {
        let ids: Vec<EdgeId> = keep.iter().collect();
        let mut g = WeightedGraph::new(self.n, ids.iter().map(|&e| self.edges[e]))
            .expect("subset of a simple graph is simple");
        g.node_weights = self.node_weights.clone();
        g.edge_weights = self.edge_weights.as_ref().map(|w| ids.iter().map(|&e| w[e]).collect());
        g.dummy = self.dummy.clone();
        g
    }

    /// Edge set of `self` expressed as the subset of `host` edges with the
    /// same endpoints. Panics if an edge is missing from `host`.
    pub fn edges_in(&self, host: &WeightedGraph) -> EdgeSet {
        let mut s = EdgeSet::empty(host.edge_count());
        for &(u, v) in &self.edges {
            s.insert(host.find_edge(u, v).expect("edge absent from host graph"));
        }
        s
    }
}

fn check_len(carrier: Carrier, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::FieldLength { carrier, expected, found });
    }
    Ok(())
}

/// Membership bitmap over the nodes or edges of a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdSet {
    bits: Vec<bool>,
}

pub type NodeSet = IdSet;
pub type EdgeSet = IdSet;

impl IdSet {
    pub fn empty(n: usize) -> Self {
        IdSet { bits: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        IdSet { bits: vec![true; n] }
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(n: usize, ids: I) -> Self {
        let mut s = Self::empty(n);
        for i in ids {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.bits[i] = true;
    }

    pub fn remove(&mut self, i: usize) {
        self.bits[i] = false;
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i]
    }

    /// Size of the universe.
    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn is_subset(&self, other: &IdSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    pub fn union_with(&mut self, other: &IdSet) {
        for i in other.iter() {
            self.insert(i);
        }
    }
}

/// Per-node label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Unset,
    /// Watershed zone: the node drains towards several minima.
    Zone,
    /// Minimum label, starting at 1.
    Basin(u32),
}

impl Label {
    pub fn basin(self) -> Option<u32> {
        match self {
            Label::Basin(l) => Some(l),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling(pub Vec<Label>);

impl Labeling {
    pub fn unset(n: usize) -> Self {
        Labeling(vec![Label::Unset; n])
    }

    pub fn from_basins(ids: &[u32]) -> Self {
        Labeling(ids.iter().map(|&l| Label::Basin(l)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: NodeId) -> Label {
        self.0[i]
    }

    /// Numeric view: basin label, or 0 for zone/unset nodes.
    pub fn as_ids(&self) -> Vec<u32> {
        self.0.iter().map(|l| l.basin().unwrap_or(0)).collect()
    }

    pub fn zone_nodes(&self) -> Vec<NodeId> {
        (0..self.len()).filter(|&i| self.0[i] == Label::Zone).collect()
    }

    /// Number of distinct basin labels.
    pub fn basin_count(&self) -> usize {
        let mut v: Vec<u32> = self.0.iter().filter_map(|l| l.basin()).collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    /// Relabels basins consecutively from 1 in order of their smallest node.
    pub fn canonical(&self) -> Labeling {
        let mut map = std::collections::HashMap::new();
        let out = self
            .0
            .iter()
            .map(|&l| match l {
                Label::Basin(b) => {
                    let next = map.len() as u32 + 1;
                    Label::Basin(*map.entry(b).or_insert(next))
                }
                other => other,
            })
            .collect();
        Labeling(out)
    }

    /// Nodes grouped by basin label, in label order.
    pub fn groups(&self) -> Vec<Vec<NodeId>> {
        let max = self.0.iter().filter_map(|l| l.basin()).max().unwrap_or(0) as usize;
        let mut g = vec![Vec::new(); max];
        for (i, l) in self.0.iter().enumerate() {
            if let Label::Basin(b) = l {
                g[*b as usize - 1].push(i);
            }
        }
        g.retain(|v| !v.is_empty());
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::levels;

    #[test]
    fn rejects_bad_edges() {
        assert!(WeightedGraph::new(2, [(0, 0)]).is_err());
        assert!(WeightedGraph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(WeightedGraph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn normalized_and_sorted() {
        let g = WeightedGraph::new(3, [(2, 0), (1, 0)]).unwrap();
        assert_eq!(g.edge(0), (0, 2));
        assert_eq!(g.neighbors(0), &[(1, 1), (2, 0)]);
        assert_eq!(g.find_edge(2, 0), Some(0));
    }

    #[test]
    fn weight_length_checked() {
        let g = WeightedGraph::new(3, [(0, 1)]).unwrap();
        assert!(g.clone().with_node_weights(levels(&[1, 2])).is_err());
        assert!(g.with_edge_weights(levels(&[1])).is_ok());
    }

    #[test]
    fn partial_keeps_weights() {
        let g = WeightedGraph::new(3, [(0, 1), (1, 2)]).unwrap().with_edge_weights(levels(&[4, 6])).unwrap();
        let p = g.partial(&EdgeSet::from_ids(2, [1]));
        assert_eq!(p.edges(), &[(1, 2)]);
        assert_eq!(p.edge_weights().unwrap(), &levels(&[6])[..]);
        assert_eq!(p.edges_in(&g), EdgeSet::from_ids(2, [1]));
    }

    #[test]
    fn canonical_labels() {
        let l = Labeling::from_basins(&[5, 5, 2, 7]).canonical();
        assert_eq!(l.as_ids(), vec![1, 1, 2, 3]);
    }
}
