//! Waterfall hierarchy: segment, contract the drainage forest, re-flood
//! the contracted graph, repeat until one region is left.

use crate::error::{Error, Result};
use crate::flooding::{flooding_from_edges, flooding_from_nodes};
use crate::graph::{EdgeId, EdgeSet, Labeling, NodeId, WeightedGraph};
use crate::steepness::zeta_prune;
use crate::structure::{connected_components, contract, is_connected};
use crate::tie::TiePolicy;
use crate::watershed::drainage_msf;

#[derive(Clone, Debug)]
pub struct HierarchyLevel {
    /// Drainage forest of this level, as base-graph edges.
    pub forest: Vec<EdgeId>,
    /// Edge-weighted graph the level was computed on.
    pub graph: WeightedGraph,
    /// Regions of this level over the base nodes.
    pub partition: Labeling,
}

impl HierarchyLevel {
    pub fn region_count(&self) -> usize {
        self.partition.basin_count()
    }
}

#[derive(Clone, Debug)]
pub struct Hierarchy {
    /// Edge-weighted base graph (expanded with dummies for node input).
    pub base: WeightedGraph,
    pub levels: Vec<HierarchyLevel>,
}

impl Hierarchy {
    pub fn region_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.region_count()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.levels.last().map(|l| l.region_count() == 1).unwrap_or(false)
    }
}

/// Builds the hierarchy of a connected graph. Edge-weighted input is used
/// as is; node-weighted input is first turned into its flooding graph.
pub fn build_hierarchy(g: &WeightedGraph, k: usize, tie: TiePolicy) -> Result<Hierarchy> {
    let base = if g.edge_weights().is_some() {
        g.clone().without_node_weights()
    } else {
        flooding_from_nodes(g)?.into_graph().without_node_weights()
    };
    if !is_connected(&base) {
        return Err(Error::DisconnectedInput);
    }
    let mut cur = base.clone();
    let mut region_of: Vec<NodeId> = (0..base.node_count()).collect();
    let mut origin: Vec<EdgeId> = (0..base.edge_count()).collect();
    let mut levels: Vec<HierarchyLevel> = Vec::new();
    loop {
        let fl = flooding_from_edges(&cur)?;
        let pruned = zeta_prune(&fl, k.max(1) - 1)?;
        let msf = drainage_msf(&pruned, tie)?;
        let forest = pruned.graph().partial(&msf.edges).edges_in(&cur);
        let comp = connected_components(&cur, &forest);
        let partition = Labeling(region_of.iter().map(|&c| comp.get(c)).collect());
        let level = HierarchyLevel { forest: forest.iter().map(|e| origin[e]).collect(), graph: cur.clone(), partition };
        let regions = level.region_count();
        if let Some(prev) = levels.last() {
            assert!(regions < prev.region_count(), "waterfall level did not merge any region");
        }
        levels.push(level);
        if regions <= 1 {
            break;
        }
        let c = contract(&cur, &forest);
        region_of.iter_mut().for_each(|r| *r = c.node_map[*r]);
        origin = c.edge_origin.iter().map(|&e| origin[e]).collect();
        cur = c.graph;
    }
    Ok(Hierarchy { base, levels })
}

/// Per base edge: 0 inside a level-0 region, otherwise the first level
/// whose partition puts both endpoints together.
pub fn waterfall_levels(h: &Hierarchy) -> Vec<u32> {
    h.base
        .edges()
        .iter()
        .map(|&(u, v)| {
            h.levels
                .iter()
                .position(|l| l.partition.get(u) == l.partition.get(v))
                .unwrap_or(h.levels.len()) as u32
        })
        .collect()
}

/// Union of all level forests; a minimum spanning tree of the base graph.
pub fn mst_emergence(h: &Hierarchy) -> Result<EdgeSet> {
    if !h.is_complete() {
        return Err(Error::IncompleteHierarchy);
    }
    let mut s = EdgeSet::empty(h.base.edge_count());
    for l in &h.levels {
        l.forest.iter().for_each(|&e| s.insert(e));
    }
    Ok(s)
}
