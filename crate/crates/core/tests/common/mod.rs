//! Seeded generators and brute-force oracles shared by the integration
//! tests. Oracles deliberately avoid the library's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use morphograph::flooding::{flooding_from_edges, flooding_from_nodes};
use morphograph::weight::levels;
use morphograph::{FloodingGraph, WeightedGraph, Weight};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected topology: a random spanning tree plus extra edges.
pub fn connected_edges(r: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut set = BTreeSet::new();
    for i in 1..n {
        let j = r.gen_range(0..i);
        set.insert((j, i));
    }
    for _ in 0..r.gen_range(0..=n) {
        let a = r.gen_range(0..n);
        let b = r.gen_range(0..n);
        if a != b {
            set.insert((a.min(b), a.max(b)));
        }
    }
    set.into_iter().collect()
}

pub fn node_graph(r: &mut ChaCha8Rng, nmin: usize, nmax: usize, wmax: u32) -> WeightedGraph {
    let n = r.gen_range(nmin..=nmax);
    let e = connected_edges(r, n);
    let w: Vec<u32> = (0..n).map(|_| r.gen_range(0..=wmax)).collect();
    WeightedGraph::new(n, e).unwrap().with_node_weights(levels(&w)).unwrap()
}

pub fn edge_graph(r: &mut ChaCha8Rng, nmin: usize, nmax: usize, wmax: u32) -> WeightedGraph {
    let n = r.gen_range(nmin..=nmax);
    let e = connected_edges(r, n);
    let w: Vec<u32> = (0..e.len()).map(|_| r.gen_range(0..=wmax)).collect();
    WeightedGraph::new(n, e).unwrap().with_edge_weights(levels(&w)).unwrap()
}

/// Connected graph with pairwise distinct edge weights.
pub fn distinct_edge_graph(r: &mut ChaCha8Rng, nmin: usize, nmax: usize) -> WeightedGraph {
    let n = r.gen_range(nmin..=nmax);
    let e = connected_edges(r, n);
    let mut w: Vec<u32> = (1..=e.len() as u32).collect();
    for i in (1..w.len()).rev() {
        w.swap(i, r.gen_range(0..=i));
    }
    WeightedGraph::new(n, e).unwrap().with_edge_weights(levels(&w)).unwrap()
}

/// Flooding graph with at most `nmax` nodes, alternating between the
/// node-weighted and edge-weighted derivations.
pub fn flooding(r: &mut ChaCha8Rng, nmax: usize, wmax: u32) -> FloodingGraph {
    loop {
        let f = if r.gen_bool(0.5) {
            flooding_from_nodes(&node_graph(r, 2, nmax.saturating_sub(2).max(2), wmax)).unwrap()
        } else {
            flooding_from_edges(&edge_graph(r, 2, nmax, wmax)).unwrap()
        };
        if f.graph().node_count() <= nmax {
            return f;
        }
    }
}

pub fn lvl(w: Weight) -> u32 {
    w.as_level().expect("plain level")
}

/// Node sets of the regional minima, by exhaustive flat-zone growth on
/// node weights.
pub fn brute_node_minima(g: &WeightedGraph) -> Vec<BTreeSet<usize>> {
    let w = g.node_weights().unwrap();
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut zone = BTreeSet::from([s]);
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for &(y, _) in g.neighbors(x) {
                if !seen[y] && w[y] == w[s] {
                    seen[y] = true;
                    zone.insert(y);
                    stack.push(y);
                }
            }
        }
        if zone.iter().all(|&x| g.neighbors(x).iter().all(|&(y, _)| zone.contains(&y) || w[y] > w[s])) {
            out.push(zone);
        }
    }
    out
}

pub fn in_minimum(g: &WeightedGraph) -> Vec<bool> {
    let mut v = vec![false; g.node_count()];
    for z in brute_node_minima(g) {
        z.into_iter().for_each(|i| v[i] = true);
    }
    v
}

/// Min over all simple paths of the max edge weight; `None` if unreachable.
pub fn brute_minmax(g: &WeightedGraph, s: usize, t: usize) -> Option<u32> {
    let e = g.edge_weights().unwrap();
    let mut best: Option<u32> = None;
    let mut on = vec![false; g.node_count()];
    fn go(g: &WeightedGraph, e: &[Weight], x: usize, t: usize, cur: u32, on: &mut [bool], best: &mut Option<u32>) {
        if x == t {
            *best = Some(best.map_or(cur, |b| b.min(cur)));
            return;
        }
        on[x] = true;
        for &(y, id) in g.neighbors(x) {
            if !on[y] {
                go(g, e, y, t, cur.max(lvl(e[id])), on, best);
            }
        }
        on[x] = false;
    }
    if s == t {
        return Some(0);
    }
    go(g, e, s, t, 0, &mut on, &mut best);
    best
}

/// Toughness of a path read from its start: the values that dominate
/// everything after them, kept in order and truncated to `k`.
pub fn toughness(seq: &[u32], k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for (i, &x) in seq.iter().enumerate() {
        if seq[i + 1..].iter().all(|&y| x >= y) {
            out.push(x);
        }
    }
    out.truncate(k);
    out
}

/// Depth-k distance of every node to the minima, by enumerating simple
/// paths that stop at the first minimum node. `None` when unreachable;
/// `Some(vec![])` for minima.
pub fn brute_lex_distances(f: &FloodingGraph, k: usize) -> Vec<Option<Vec<u32>>> {
    let g = f.graph();
    let is_min = in_minimum(g);
    let e = f.edge_weights();
    let n = g.node_count();
    (0..n)
        .map(|s| {
            if is_min[s] {
                return Some(vec![]);
            }
            let mut best: Option<Vec<u32>> = None;
            let mut on = vec![false; n];
            let mut path = Vec::new();
            #[allow(clippy::too_many_arguments)]
            fn go(
                g: &WeightedGraph, e: &[Weight], is_min: &[bool], k: usize, x: usize, on: &mut [bool],
                path: &mut Vec<u32>, best: &mut Option<Vec<u32>>,
            ) {
                if is_min[x] {
                    let t = toughness(path, k);
                    if best.as_ref().is_none_or(|b| t < *b) {
                        *best = Some(t);
                    }
                    return;
                }
                on[x] = true;
                for &(y, id) in g.neighbors(x) {
                    if !on[y] {
                        path.push(lvl(e[id]));
                        go(g, e, is_min, k, y, on, path, best);
                        path.pop();
                    }
                }
                on[x] = false;
            }
            go(g, e, &is_min, k, s, &mut on, &mut path, &mut best);
            best
        })
        .collect()
}

/// Edge ids kept by `↓^k`, from explicit enumeration of all flooding
/// tracks of at most `k` pairs (a track stops when it enters a minimum).
pub fn brute_prune(f: &FloodingGraph, k: usize) -> BTreeSet<usize> {
    let g = f.graph();
    let w: Vec<u32> = f.node_weights().iter().map(|&x| lvl(x)).collect();
    let is_min = in_minimum(g);
    let mut keep = BTreeSet::new();
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if is_min[u] && is_min[v] {
            keep.insert(id);
        }
    }
    for s in (0..g.node_count()).filter(|&s| !is_min[s]) {
        // (first edge, weight sequence)
        let mut tracks: Vec<(usize, Vec<u32>)> = Vec::new();
        let mut stack: Vec<(usize, Option<usize>, Vec<u32>)> = vec![(s, None, vec![])];
        while let Some((x, first, seq)) = stack.pop() {
            for &(y, id) in g.neighbors(x) {
                if w[y] > w[x] {
                    continue;
                }
                let mut seq2 = seq.clone();
                seq2.push(w[x]);
                let first2 = first.unwrap_or(id);
                if is_min[y] || seq2.len() == k {
                    tracks.push((first2, seq2));
                } else {
                    stack.push((y, Some(first2), seq2));
                }
            }
        }
        let best = tracks.iter().map(|t| t.1.clone()).min().unwrap();
        for (id, seq) in tracks {
            if seq == best {
                keep.insert(id);
            }
        }
    }
    keep
}

/// Kruskal where two components may not merge if both already hold a
/// (different) regional minimum; returns the forest weight.
pub fn constrained_kruskal(f: &FloodingGraph) -> u128 {
    let g = f.graph();
    let e = f.edge_weights();
    let n = g.node_count();
    let mut mark: Vec<Option<usize>> = vec![None; n];
    for (m, z) in brute_node_minima(g).into_iter().enumerate() {
        z.into_iter().for_each(|i| mark[i] = Some(m));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut root_mark = mark.clone();
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&i| e[i]);
    let mut total = 0u128;
    for id in order {
        let (u, v) = g.edge(id);
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            continue;
        }
        match (root_mark[a], root_mark[b]) {
            (Some(x), Some(y)) if x != y => continue,
            (ma, mb) => {
                parent[a] = b;
                root_mark[b] = ma.or(mb);
                total += lvl(e[id]) as u128;
            }
        }
    }
    total
}

/// Minimum spanning forest weight from petgraph's Kruskal.
pub fn kruskal_weight(g: &WeightedGraph) -> (u128, BTreeSet<(usize, usize)>) {
    use petgraph::data::Element;
    let e = g.edge_weights().unwrap();
    let mut pg = petgraph::graph::UnGraph::<(), u32>::new_undirected();
    let ids: Vec<_> = (0..g.node_count()).map(|_| pg.add_node(())).collect();
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        pg.add_edge(ids[u], ids[v], lvl(e[k]));
    }
    let mut total = 0u128;
    let mut set = BTreeSet::new();
    for el in petgraph::algo::min_spanning_tree(&pg) {
        if let Element::Edge { source, target, weight } = el {
            total += weight as u128;
            set.insert((source.min(target), source.max(target)));
        }
    }
    (total, set)
}

/// Multi-source breadth-first distance inside `allowed`, from `sources`.
pub fn bfs(g: &WeightedGraph, sources: &[usize], allowed: &[bool]) -> Vec<Option<usize>> {
    let mut d = vec![None; g.node_count()];
    let mut q = VecDeque::new();
    for &s in sources {
        d[s] = Some(0);
        q.push_back(s);
    }
    while let Some(x) = q.pop_front() {
        for &(y, _) in g.neighbors(x) {
            if allowed[y] && d[y].is_none() {
                d[y] = Some(d[x].unwrap() + 1);
                q.push_back(y);
            }
        }
    }
    d
}

/// Proptest strategy: a connected node-weighted graph.
pub fn arb_node_graph(nmax: usize, wmax: u32) -> impl Strategy<Value = WeightedGraph> {
    any::<u64>().prop_map(move |seed| node_graph(&mut rng(seed), 1, nmax, wmax))
}

/// Proptest strategy: a connected edge-weighted graph.
pub fn arb_edge_graph(nmax: usize, wmax: u32) -> impl Strategy<Value = WeightedGraph> {
    any::<u64>().prop_map(move |seed| edge_graph(&mut rng(seed), 2, nmax, wmax))
}

/// Proptest strategy: a flooding graph.
pub fn arb_flooding(nmax: usize, wmax: u32) -> impl Strategy<Value = FloodingGraph> {
    any::<u64>().prop_map(move |seed| flooding(&mut rng(seed), nmax, wmax))
}
