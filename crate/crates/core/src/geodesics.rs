//! Graph-native distances to the minima: Moore-Dijkstra, core expansion,
//! the classical hierarchical-queue watershed, and additive toll distances.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::adjunction::erode_n;
use crate::error::{Error, Result};
use crate::flooding::{minima_of_flooding, FloodingGraph};
use crate::graph::{Carrier, EdgeId, Label, Labeling, NodeId, WeightedGraph};
use crate::hq::HierarchicalQueue;
use crate::lexalgebra::{boxtimes, LexWeight};
use crate::structure::regional_minima;
use crate::tie::{tie_key, TiePolicy};
use crate::weight::Weight;

/// Distances to the minima and the label of a nearest minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub distances: Vec<LexWeight>,
    pub labels: Labeling,
    /// Edge through which each node was reached; `None` for minima.
    pub parents: Vec<Option<EdgeId>>,
    /// Times each node entered the queue.
    pub enqueued: Vec<u32>,
}

impl DistanceResult {
    fn new(n: usize) -> Self {
        DistanceResult {
            distances: vec![LexWeight::Zero; n],
            labels: Labeling::unset(n),
            parents: vec![None; n],
            enqueued: vec![0; n],
        }
    }
}

/// Pairs `(s, edge)` through which `s` floods `t`.
fn flooders(g: &FloodingGraph, t: NodeId) -> impl Iterator<Item = (NodeId, EdgeId)> + '_ {
    let (n, e) = (g.node_weights(), g.edge_weights());
    g.graph().neighbors(t).iter().copied().filter(move |&(s, id)| e[id] == n[s])
}

/// Greedy settlement in order of increasing estimate; an estimate is
/// `[e_st] ⊠ δ*(t)` through a flooding pair of `s` towards a settled `t`.
/// Ties between equal estimates go to the smaller label, or to a seeded
/// random key.
pub fn moore_dijkstra(g: &FloodingGraph, k: usize, tie: TiePolicy) -> Result<DistanceResult> {
    let minima = minima_of_flooding(g)?;
    let n = g.graph().node_count();
    let mut rng = tie.rng();
    let mut r = DistanceResult::new(n);
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    for i in 0..n {
        if let Label::Basin(l) = minima.get(i) {
            r.enqueued[i] += 1;
            heap.push(Reverse((LexWeight::Unit, tie_key(&mut rng), l, i, None)));
        }
    }
    while let Some(Reverse((d, _, label, t, parent))) = heap.pop() {
        if settled[t] {
            continue;
        }
        settled[t] = true;
        r.labels.0[t] = Label::Basin(label);
        r.parents[t] = parent;
        for (s, e) in flooders(g, t) {
            if settled[s] {
                continue;
            }
            let est = boxtimes(&LexWeight::Seq(vec![g.edge_weights()[e]]), &d, k);
            r.enqueued[s] += 1;
            let key = match tie {
                TiePolicy::MinLabel => label as u64,
                TiePolicy::Seeded(_) => tie_key(&mut rng),
            };
            heap.push(Reverse((est, key, label, s, Some(e))));
        }
        r.distances[t] = d;
    }
    Ok(r)
}

/// Core expansion: the queue is keyed by `first_{k−1}(δ*)`; popping `t`
/// settles at once every node that floods `t` and is not yet reached.
/// Each node enters the queue exactly once.
pub fn core_expanding(g: &FloodingGraph, k: usize) -> Result<DistanceResult> {
    let minima = minima_of_flooding(g)?;
    let n = g.graph().node_count();
    let mut r = DistanceResult::new(n);
    let mut reached = vec![false; n];
    let mut hq = HierarchicalQueue::new();
    for i in 0..n {
        if minima.get(i) != Label::Unset {
            reached[i] = true;
            r.distances[i] = LexWeight::Unit;
            r.labels.0[i] = minima.get(i);
            r.enqueued[i] += 1;
            hq.push(LexWeight::Unit, i);
        }
    }
    while let Some((_, t)) = hq.pop() {
        for (s, e) in flooders(g, t) {
            if reached[s] {
                continue;
            }
            reached[s] = true;
            let d = boxtimes(&LexWeight::Seq(vec![g.edge_weights()[e]]), &r.distances[t], k);
            r.labels.0[s] = r.labels.get(t);
            r.parents[s] = Some(e);
            r.enqueued[s] += 1;
            hq.push(d.first(k.saturating_sub(1)), s);
            r.distances[s] = d;
        }
    }
    Ok(r)
}

/// Labels and the order in which nodes left the queue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flood {
    pub labels: Labeling,
    pub order: Vec<NodeId>,
}

/// Hierarchical-queue flooding from the labelled minima: the popped node
/// hands its label to every unlabelled neighbor, which enters the queue at
/// its own weight. Minima enter first, in node order; FIFO buckets make
/// plateaus fill from their lower boundary inwards.
pub fn classical_watershed(g: &FloodingGraph) -> Result<Flood> {
    let minima = minima_of_flooding(g)?;
    let w = g.node_weights();
    let mut labels = minima.clone();
    let mut hq = HierarchicalQueue::new();
    for i in 0..w.len() {
        if minima.get(i) != Label::Unset {
            hq.push(Weight::Bottom, i);
        }
    }
    let mut order = Vec::with_capacity(w.len());
    while let Some((_, j)) = hq.pop() {
        order.push(j);
        for &(i, _) in g.graph().neighbors(j) {
            if labels.get(i) == Label::Unset {
                labels.0[i] = labels.get(j);
                hq.push(w[i], i);
            }
        }
    }
    Ok(Flood { labels, order })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TollMode {
    /// Each node costs its weight.
    Toll,
    /// Each node costs `ν − ε_n ν`; roots cost their altitude.
    Topographic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RootCost {
    /// Roots pay their own cost.
    #[default]
    Inclusive,
    /// Roots start at 0.
    Exclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TollResult {
    /// `None` where no root is reachable.
    pub distances: Vec<Option<u64>>,
    pub labels: Labeling,
    pub costs: Vec<u64>,
    pub parents: Vec<Option<NodeId>>,
}

fn plain_levels(w: &[Weight]) -> Result<Vec<u64>> {
    w.iter()
        .map(|x| x.as_level().map(u64::from).ok_or_else(|| Error::InvalidGraph("sentinel node weight".into())))
        .collect()
}

/// Additive shortest paths where every node on the path pays its cost.
/// `roots[l]` is the set of nodes carrying label `l + 1`; ties go to the
/// smaller label.
pub fn toll_distance(g: &WeightedGraph, roots: &[Vec<NodeId>], mode: TollMode, root_cost: RootCost) -> Result<TollResult> {
    if roots.iter().all(|r| r.is_empty()) {
        return Err(Error::NoRoots);
    }
    let nu = plain_levels(g.require_node_weights()?)?;
    let n = nu.len();
    let mut is_root = vec![false; n];
    roots.iter().flatten().for_each(|&i| is_root[i] = true);
    let costs: Vec<u64> = match mode {
        TollMode::Toll => nu.clone(),
        TollMode::Topographic => {
            // isolated nodes erode to `Top`, but they are always roots
            let low = erode_n(g, g.node_weights().unwrap());
            (0..n).map(|i| if is_root[i] { nu[i] } else { nu[i] - low[i].as_level().map_or(nu[i], u64::from) }).collect()
        }
    };
    let mut out = TollResult { distances: vec![None; n], labels: Labeling::unset(n), costs, parents: vec![None; n] };
    let mut heap = BinaryHeap::new();
    for (l, set) in roots.iter().enumerate() {
        for &i in set {
            let d = match root_cost {
                RootCost::Inclusive => out.costs[i],
                RootCost::Exclusive => 0,
            };
            heap.push(Reverse((d, l as u32 + 1, i, None)));
        }
    }
    while let Some(Reverse((d, label, i, parent))) = heap.pop() {
        if out.distances[i].is_some() {
            continue;
        }
        out.distances[i] = Some(d);
        out.labels.0[i] = Label::Basin(label);
        out.parents[i] = parent;
        for &(j, _) in g.neighbors(i) {
            if out.distances[j].is_none() && !is_root[j] {
                heap.push(Reverse((d + out.costs[j], label, j, Some(i))));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub tolls: Vec<u64>,
    pub labels: Labeling,
    /// Topographic distance to the minima; equals `f` wherever a
    /// steepest-descent path exists.
    pub recovered: Vec<u64>,
}

/// Local tolls `f − ε_n f` (altitude on minima) and their integration from
/// the minima.
pub fn reconstruct_by_integration(g: &WeightedGraph) -> Result<Reconstruction> {
    let roots: Vec<Vec<NodeId>> =
        regional_minima(g, Carrier::Nodes)?.into_iter().map(|r| r.nodes.iter().collect()).collect();
    let t = toll_distance(g, &roots, TollMode::Topographic, RootCost::Inclusive)?;
    let recovered = t.distances.iter().map(|d| d.expect("every node drains to a minimum")).collect();
    Ok(Reconstruction { tolls: t.costs, labels: t.labels, recovered })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flooding::flooding_from_nodes;
    use crate::weight::levels;

    fn path_nodes(w: &[u32]) -> WeightedGraph {
        WeightedGraph::new(w.len(), (1..w.len()).map(|i| (i - 1, i))).unwrap().with_node_weights(levels(w)).unwrap()
    }

    #[test]
    fn five_path_distances() {
        let f = flooding_from_nodes(&path_nodes(&[0, 1, 2, 1, 0])).unwrap();
        let r = moore_dijkstra(&f, 2, TiePolicy::MinLabel).unwrap();
        assert_eq!(r.distances[2], LexWeight::seq(&[2, 1]));
        assert_eq!(r.distances[1], LexWeight::seq(&[1]));
        assert_eq!(r.labels.as_ids()[..5], [1, 1, 1, 2, 2]);
        let c = core_expanding(&f, 2).unwrap();
        assert_eq!(c.distances, r.distances);
        assert!(c.enqueued.iter().all(|&x| x == 1));
        let w = classical_watershed(&f).unwrap();
        assert_eq!(w.labels.as_ids()[..5], [1, 1, 1, 2, 2]);
    }

    #[test]
    fn path4_all_in_minima() {
        let g = WeightedGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap().with_edge_weights(levels(&[1, 3, 2])).unwrap();
        let f = crate::flooding::flooding_from_edges(&g).unwrap();
        let r = moore_dijkstra(&f, 3, TiePolicy::MinLabel).unwrap();
        assert!(r.distances.iter().all(|d| *d == LexWeight::Unit));
    }

    #[test]
    fn topographic_path() {
        let g = path_nodes(&[0, 1, 3]);
        let t = toll_distance(&g, &[vec![0]], TollMode::Topographic, RootCost::Inclusive).unwrap();
        assert_eq!(t.distances, vec![Some(0), Some(1), Some(3)]);
        let t = toll_distance(&path_nodes(&[4, 1]), &[vec![0]], TollMode::Toll, RootCost::Exclusive).unwrap();
        assert_eq!(t.distances, vec![Some(0), Some(1)]);
        assert_eq!(toll_distance(&g, &[], TollMode::Toll, RootCost::Inclusive), Err(Error::NoRoots));
    }

    #[test]
    fn integration() {
        let r = reconstruct_by_integration(&path_nodes(&[0, 1, 2, 1, 0])).unwrap();
        assert_eq!(r.tolls, vec![0, 1, 1, 1, 0]);
        assert_eq!(r.recovered, vec![0, 1, 2, 1, 0]);
        assert_eq!(r.labels.as_ids(), vec![1, 1, 1, 2, 2]);
        let r = reconstruct_by_integration(&path_nodes(&[3, 3, 3])).unwrap();
        assert_eq!(r.tolls, vec![3, 3, 3]);
        assert_eq!(r.labels.basin_count(), 1);
    }
}
