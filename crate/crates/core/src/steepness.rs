//! Flooding tracks, the pruning `↓^k`, the graph erosion and `ζ`.
//!
//! All comparisons run on the M-flooded weights (minima at 0), so a track
//! that reaches a minimum early is padded with zeros and therefore beats
//! its longer rivals, as the "shorter wins" rule requires.

use crate::adjunction::{erode_e, erode_n};
use crate::error::Result;
use crate::flooding::{to_m_flooding, validate_flooding, FloodingGraph, FloodingPair};
use crate::graph::{EdgeId, EdgeSet, Label, NodeId, WeightedGraph};
use crate::weight::Weight;

/// Chained flooding pairs with never-increasing weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloodingTrack {
    pub pairs: Vec<FloodingPair>,
    pub weights: Vec<Weight>,
}

/// Ownership view of an M-flooded graph: `owned[i]` lists the pairs
/// `(j, edge)` through which `i` floods (edge weight equal to `i`'s).
struct Owned {
    w: Vec<Weight>,
    in_min: Vec<bool>,
    owned: Vec<Vec<(NodeId, EdgeId)>>,
}

fn owned(g: &FloodingGraph) -> Result<Owned> {
    let m = to_m_flooding(g)?;
    let gr = &m.graph;
    let w = gr.node_weights().unwrap().to_vec();
    let in_min = (0..gr.node_count()).map(|i| m.minima.get(i) != Label::Unset).collect();
    let owned = (0..gr.node_count())
        .map(|i| gr.neighbors(i).iter().copied().filter(|&(j, _)| w[j] <= w[i]).collect())
        .collect();
    Ok(Owned { w, in_min, owned })
}

/// Every track of at most `k` pairs starting at `start`; a track stops early
/// when it enters a minimum. Exponential; meant for small graphs.
pub fn tracks_from(g: &FloodingGraph, start: NodeId, k: usize) -> Result<Vec<FloodingTrack>> {
    let o = owned(g)?;
    let mut out = Vec::new();
    if o.in_min[start] || k == 0 {
        return Ok(out);
    }
    let nw = g.node_weights();
    let mut stack = vec![(start, FloodingTrack { pairs: vec![], weights: vec![] })];
    while let Some((i, t)) = stack.pop() {
        for &(j, e) in &o.owned[i] {
            let mut t2 = t.clone();
            t2.pairs.push(FloodingPair { node: i, edge: e });
            t2.weights.push(nw[i]);
            if o.in_min[j] || t2.pairs.len() == k {
                out.push(t2);
            } else {
                stack.push((j, t2));
            }
        }
    }
    Ok(out)
}

/// `↓^k`: keeps, for each node outside the minima, the adjacent edges that
/// head a minimal track of length `k`. Edges inside minima always stay.
/// Survivors keep their original weights.
pub fn prune_k(g: &FloodingGraph, k: usize) -> Result<FloodingGraph> {
    assert!(k >= 1, "steepness starts at 1");
    let o = owned(g)?;
    let n = o.w.len();
    // best[i] = minimal weight sequence of a length-m walk from i
    let mut best: Vec<Vec<Weight>> = o.w.iter().map(|&x| vec![x]).collect();
    for _ in 2..k {
        best = (0..n)
            .map(|i| {
                let tail = o.owned[i].iter().map(|&(j, _)| &best[j]).min().expect("flooding node without pair");
                let mut s = Vec::with_capacity(tail.len() + 1);
                s.push(o.w[i]);
                s.extend_from_slice(tail);
                s
            })
            .collect();
    }
    let mut keep = EdgeSet::empty(g.graph().edge_count());
    for i in 0..n {
        let pairs = &o.owned[i];
        if o.in_min[i] || k == 1 {
            pairs.iter().for_each(|&(_, e)| keep.insert(e));
            continue;
        }
        let low = pairs.iter().map(|&(j, _)| &best[j]).min().unwrap();
        for &(j, e) in pairs {
            if &best[j] == low {
                keep.insert(e);
            }
        }
    }
    Ok(g.partial(&keep))
}

/// `εG = (ε_e e, ε_n n)`, both computed from the same input.
pub fn erode_graph(g: &WeightedGraph) -> Result<WeightedGraph> {
    let n = erode_n(g, g.require_node_weights()?);
    let e = erode_e(g, g.require_edge_weights()?);
    g.clone().with_node_weights(n)?.with_edge_weights(e)
}

/// State of the iterated `ζ`: surviving edges and current node values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaState {
    pub edges: EdgeSet,
    pub values: Vec<Weight>,
}

/// Starting state of the iteration: all edges, M-flooded node weights.
pub fn zeta_init(g: &FloodingGraph) -> Result<ZetaState> {
    let o = owned(g)?;
    Ok(ZetaState { edges: EdgeSet::full(g.graph().edge_count()), values: o.w })
}

/// One `ζ` step: each node takes the lowest value among the nodes it
/// floods into over surviving edges; a pair edge survives if it carried
/// that lowest value for one of its owners. Reads iterate m−1 only.
pub fn zeta_step(g: &FloodingGraph, s: &ZetaState) -> Result<ZetaState> {
    let o = owned(g)?;
    Ok(step(&o, s))
}

fn step(o: &Owned, s: &ZetaState) -> ZetaState {
    let n = o.w.len();
    let alive = |e: EdgeId| s.edges.contains(e);
    let values: Vec<Weight> = (0..n)
        .map(|i| {
            o.owned[i].iter().filter(|&&(_, e)| alive(e)).map(|&(j, _)| s.values[j]).min().unwrap_or(s.values[i])
        })
        .collect();
    let mut edges = EdgeSet::empty(s.edges.capacity());
    for i in 0..n {
        for &(j, e) in &o.owned[i] {
            if alive(e) && s.values[j] == values[i] {
                edges.insert(e);
            }
        }
    }
    ZetaState { edges, values }
}

/// `ζ` applied `m` times; the survivors carry their original weights.
/// Its edge set equals that of `prune_k(g, m + 1)`.
pub fn zeta_prune(g: &FloodingGraph, m: usize) -> Result<FloodingGraph> {
    let o = owned(g)?;
    let mut s = ZetaState { edges: EdgeSet::full(g.graph().edge_count()), values: o.w.clone() };
    for _ in 0..m {
        let next = step(&o, &s);
        if next.edges == s.edges && next.values == s.values {
            break;
        }
        s = next;
    }
    Ok(g.partial(&s.edges))
}

/// True iff `ε^(l)` of the M-flooded graph is a flooding graph for every
/// `l < k`. Every output of `prune_k(·, k)` passes; passing does not by
/// itself mean `prune_k` would leave the graph unchanged.
pub fn is_k_steep(g: &FloodingGraph, k: usize) -> Result<bool> {
    let mut cur = to_m_flooding(g)?.graph;
    for _ in 0..k {
        if !validate_flooding(&cur)?.is_valid() {
            return Ok(false);
        }
        cur = erode_graph(&cur)?;
    }
    Ok(true)
}
