//! Scissor, drainage forests, catchment basins with watershed zones.

use petgraph::unionfind::UnionFind;
use rand::Rng;

use crate::error::Result;
use crate::flooding::{drainage, minima_of_flooding, FloodingGraph};
use crate::graph::{EdgeSet, Label, Labeling};
use crate::steepness::zeta_prune;
use crate::tie::TiePolicy;

/// Edges and labels left by the scissor.
struct Cut {
    pairs: EdgeSet,
    inner: EdgeSet,
    labels: Labeling,
}

fn cut(g: &FloodingGraph, tie: TiePolicy) -> Result<Cut> {
    let minima = minima_of_flooding(g)?;
    let gr = g.graph();
    let d = drainage(g, &minima);
    let mut rng = tie.rng();
    let mut labels = minima.clone();
    let mut pairs = EdgeSet::empty(gr.edge_count());
    for &i in &d.order {
        let cands = &d.candidates[i];
        let (j, e) = match rng.as_mut() {
            Some(r) => cands[r.gen_range(0..cands.len())],
            None => *cands.iter().min_by_key(|&&(j, _)| (labels.get(j), j)).unwrap(),
        };
        labels.0[i] = labels.get(j);
        pairs.insert(e);
    }
    let mut inner = EdgeSet::empty(gr.edge_count());
    for (e, &(u, v)) in gr.edges().iter().enumerate() {
        if minima.get(u) != Label::Unset && minima.get(v) != Label::Unset {
            inner.insert(e);
        }
    }
    Ok(Cut { pairs, inner, labels })
}

/// `χ`: outside the minima each node keeps exactly one flooding pair, so a
/// single path leads from every node to a minimum. Edges inside minima
/// stay.
pub fn scissor(g: &FloodingGraph, tie: TiePolicy) -> Result<FloodingGraph> {
    let mut c = cut(g, tie)?;
    c.pairs.union_with(&c.inner);
    Ok(g.partial(&c.pairs))
}

/// Forest over the edges of a host graph, one tree per minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningForest {
    pub edges: EdgeSet,
    /// Minimum label of the tree holding each node.
    pub labels: Labeling,
    pub weight: u128,
}

/// Drainage minimum spanning forest: a spanning tree inside every minimum
/// plus the scissor pairs. Its weight is `Σ (n_i − 1) λ_i` over minima plus
/// the weights of all outside nodes, whatever the tie policy.
pub fn drainage_msf(g: &FloodingGraph, tie: TiePolicy) -> Result<SpanningForest> {
    let c = cut(g, tie)?;
    let gr = g.graph();
    let mut uf = UnionFind::new(gr.node_count());
    let mut edges = c.pairs;
    for e in c.inner.iter() {
        let (u, v) = gr.edge(e);
        if uf.union(u, v) {
            edges.insert(e);
        }
    }
    let w = g.edge_weights();
    let weight = edges.iter().map(|e| w[e].as_level().unwrap_or(0) as u128).sum();
    Ok(SpanningForest { edges, labels: c.labels, weight })
}

fn join(a: Label, b: Label) -> Label {
    match (a, b) {
        (Label::Unset, x) | (x, Label::Unset) => x,
        (Label::Basin(x), Label::Basin(y)) if x == y => a,
        _ => Label::Zone,
    }
}

/// Labels spread upwards along the flooding pairs of the `k`-steep graph,
/// one synchronous step at a time. A node reached by two labels, or by a
/// zone, becomes a zone node.
pub fn basins_with_zones(g: &FloodingGraph, k: usize) -> Result<Labeling> {
    assert!(k >= 1);
    let p = zeta_prune(g, k - 1)?;
    let minima = minima_of_flooding(&p)?;
    let (gr, w) = (p.graph(), p.node_weights());
    let mut cur = minima.clone();
    loop {
        let next: Vec<Label> = (0..gr.node_count())
            .map(|i| {
                if minima.get(i) != Label::Unset {
                    return minima.get(i);
                }
                gr.neighbors(i).iter().filter(|&&(j, _)| w[j] <= w[i]).fold(cur.get(i), |acc, &(j, _)| join(acc, cur.get(j)))
            })
            .collect();
        if next == cur.0 {
            return Ok(cur);
        }
        cur = Labeling(next);
    }
}

/// Catchment basins of the `k`-steep graph with every tie resolved by the
/// policy: no zone nodes remain.
pub fn partition(g: &FloodingGraph, k: usize, tie: TiePolicy) -> Result<Labeling> {
    assert!(k >= 1);
    Ok(cut(&zeta_prune(g, k - 1)?, tie)?.labels)
}
